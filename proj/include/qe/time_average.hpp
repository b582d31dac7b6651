#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qe/lattice.hpp"
#include "qe/spectra.hpp"

namespace qe {

/// (1/#basis) sum_j |<psi_j, T psi_j>|^2 over the basis columns.
double quantum_variance(const SpectralData& basis, const Observable& T);
double quantum_variance(const SpectralData& basis, const Eigen::MatrixXcd& T);

/// sqrt(sum |M(x,y)|^2).
double hs_norm(const Eigen::MatrixXcd& M);

/// Infinite-time average sum_c P_c a P_c over the degeneracy classes of the
/// basis, as a dense site-indexed matrix.
Eigen::MatrixXcd time_averaged_observable(const SpectralData& basis, const Observable& a);

/// ceil(64 T), at least 2.
Index default_quadrature_steps(double T);

/// Trapezoid average over [0,T] of e^{-itA} a e^{itA}, evaluated entry-wise
/// in the eigenbasis. Independent of the class bookkeeping used by
/// time_averaged_observable.
Eigen::MatrixXcd numeric_time_average(const Observable& a, const SpectralData& basis, double T,
                                      std::optional<Index> steps = std::nullopt);

/// e^(theta) . a = sum_x exp(-i pi <theta, x>) a(x,x) with theta = t/(N+1).
Complex fourier_coefficient(const Observable& a, const Frequency& theta_numerators, int N);

/// C_N(k,m) = <s^(k), a s^(m)>, indexed by linear frequency index on [[1,N]]^d.
Eigen::MatrixXcd center_matrix(const Observable& a, int N);
/// Same matrix assembled from the 4^d signed Fourier coefficients per entry.
Eigen::MatrixXcd center_matrix_from_fourier(const Observable& a, int N);
/// C_N with entries zeroed where lambda(k) != lambda(m) (within tol).
Eigen::MatrixXcd masked_center_matrix(const Observable& a, int N, std::optional<double> tol = std::nullopt);

struct ThetaEntry {
    Index k;
    Index m;
    Complex value;
};

/// Sparse C_{N,theta}: every (k,m) reached by some sign pair, including
/// entries where contributions cancel.
struct ThetaComponent {
    Frequency theta;
    Complex coefficient;
    std::vector<ThetaEntry> entries;
};

using ThetaDecomposition = std::map<Frequency, ThetaComponent>;

ThetaDecomposition theta_decompose(const Observable& a, int N, int d, std::optional<double> tol = std::nullopt);

Eigen::MatrixXcd to_dense(const ThetaComponent& component, Index volume);
Eigen::MatrixXcd assemble(const ThetaDecomposition& decomposition, Index volume);

/// 2 * 4^d * N^{d-1}.
std::int64_t theta_support_bound(int N, int d);

struct BesselCheck {
    double lhs;
    double rhs;
    bool holds() const { return lhs <= rhs; }
};

/// lhs = sum_theta |<e~(theta), a~>|^2 over the zero-padded box [[0,N]]^d;
/// rhs = 4^d ||a||_inf^2.
BesselCheck bessel_bound_check(const Observable& a, int N, int d);

/// <e~(theta), e~(theta')> on [[0,N]]^d by direct summation.
Complex padded_exponential_inner(const Frequency& theta, const Frequency& theta_prime, int N);

/// Index of the orthogonal class of theta: sign half (nonnegative first) and
/// parity per coordinate, so 4^d classes.
int bessel_class(const Frequency& theta_numerators);

/// Explicit bound Var(a - <a>) <= ((2*4^d)^2 16^d / N + 2 d^2 / (N+1)^2) ||a||_inf^2
/// for any Dirichlet eigenbasis on [[1,N]]^d.
double variance_decay_bound(int N, int d, double sup_norm);

} // namespace qe
