#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qe/lattice.hpp"

namespace qe {

/// Integer numerators t of a frequency theta = t / (N+1).
using Frequency = std::vector<int>;
/// Sign vector in {1,-1}^d.
using SignVector = std::vector<int>;

/// Eigenvalues with an orthonormal eigenvector family (columns) and the
/// partition of indices into degeneracy classes.
struct SpectralData {
    LatticeBox box;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    std::vector<std::vector<Index>> classes;
    /// Frequency label of each eigenvector, when the basis is analytic.
    std::vector<MultiIndex> frequencies;

    Index size() const { return eigenvalues.size(); }
    Wavefunction vector(Index j) const { return Wavefunction(box, eigenvectors.col(j)); }
};

struct EigenPair {
    double eigenvalue;
    Wavefunction vector;
};

/// 1e-9 * 2d.
double default_degeneracy_tolerance(int d);

/// sum_l 2 cos(k_l pi / (N+1)).
double dirichlet_eigenvalue(int N, const MultiIndex& k);
/// sum_l 2 cos(2 pi k_l / N).
double periodic_eigenvalue(int N, const MultiIndex& k);

/// Sine basis vector s_N^(k) for k in [[1,N]]^d with its eigenvalue.
EigenPair dirichlet_eigenpair(int N, int d, const MultiIndex& k);
/// Bloch vector N^{-d/2} exp(2 pi i <k,x>/N) for k in [[0,N-1]]^d.
EigenPair periodic_eigenpair(int N, int d, const MultiIndex& k);

/// Matrix-free nearest-neighbour sum. Periodic mode follows the periodic
/// extension literally, so a side of length 2 counts its other site twice.
Wavefunction apply_adjacency(const Wavefunction& psi, BoundaryMode mode);
Eigen::MatrixXd adjacency_matrix(const LatticeBox& box, BoundaryMode mode);

/// Maximal runs of sorted eigenvalues whose consecutive gaps are <= tol.
std::vector<std::vector<Index>> degeneracy_classes(const Eigen::VectorXd& sorted_eigenvalues, double tol);

/// Full sine eigenbasis of the Dirichlet adjacency matrix on [[1,N]]^d,
/// sorted by eigenvalue (ties broken by frequency order).
SpectralData dirichlet_basis(int N, int d, std::optional<double> tol = std::nullopt);
/// Full Bloch eigenbasis of the periodic adjacency matrix on [[1,N]]^d.
SpectralData periodic_basis(int N, int d, std::optional<double> tol = std::nullopt);

/// Number of frequency pairs (k, m) in [[1,N]]^d with lambda(k) = lambda(m)
/// (within tol) and k*eps + m*eps' = theta_numerators. Enumerates m and
/// solves for k coordinate-wise.
std::int64_t lemma_c1_count(int N, int d, const Frequency& theta_numerators, const SignVector& eps,
                            const SignVector& eps_prime, std::optional<double> tol = std::nullopt);

/// 2 N^{d-1}.
std::int64_t lemma_c1_bound(int N, int d);

/// All sign vectors in {1,-1}^d, starting from (1,...,1).
std::vector<SignVector> sign_vectors(int d);
/// All numerator vectors in [[-2N, 2N]]^d.
std::vector<Frequency> frequency_grid(int N, int d);

} // namespace qe
