#pragma once

#include <vector>

#include "qe/lattice.hpp"

namespace qe {

/// Spherical function of Z, Phi_lambda(n) = cos(n arccos(lambda/2)),
/// evaluated by the three-term recursion. Throws std::domain_error for
/// |lambda| > 2.
double spherical(double lambda, int n);

/// Phi_{A}(n) for the 1-D Dirichlet adjacency matrix on [[1,N]], from the
/// recursion T_0 = Id, T_1 = A/2, T_{n+1} = A T_n - T_{n-1}.
Eigen::MatrixXd chebyshev_operator(int n, int N);

/// Restriction to [[1,N]]^2 of the infinite-lattice operator T_n
/// (identity for n = 0, 1/2 on |x-y| = n otherwise).
Eigen::MatrixXd lattice_chebyshev_pattern(int n, int N);

/// Eigenfunction correlator: sum_z (1/#L_z) sum_{L_z} K(x,x+z) <psi, rho_z psi>
/// (dirichlet) or (1/volume) sum_z sum_{L_z} K(x,x+z) <psi, tau_z psi>
/// (periodic).
Complex correlator(const Observable& K, const Wavefunction& psi, BoundaryMode mode);

/// K~(x,x+z) = mean of K(y,y+z) over y in L_z.
Observable averaged_kernel(const Observable& K);

struct WuchaRow {
    int N = 0;
    int z = 0;
    double max_error = 0.0;    // max_j |<s_j, rho_z s_j> - Phi_{lambda_j}(|z|)|
    double error_times_N = 0.0;
    double bound = 0.0;        // 2 * sum |Phi_A(|z|) - T_|z||, N-independent once N > 2|z|
};

/// Scans z in [-R, R] for each N, comparing Dirichlet sine-basis correlators
/// with the spherical function.
std::vector<WuchaRow> wucha_error_scan(const std::vector<int>& N_list, int R);

/// sum over [[1,N]]^2 of |Phi_A(n) - T_n|.
double chebyshev_boundary_defect(int n, int N);

} // namespace qe
