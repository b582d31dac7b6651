#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qe/lattice.hpp"
#include "qe/spectra.hpp"

namespace qe {

/// Raised when a period length outside {1,2} is requested for the block
/// embedding; the antisymmetric extension is not an eigenfunction there.
class UnsupportedPeriod : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Reflection x_l -> side - x_l on an even-sided box. The hyperplane
/// x_l = side is identified with x_l = 0 and maps to itself.
MultiIndex reflect(const MultiIndex& x, int l, const LatticeBox& box);

/// Box with sides 2 n_l + 2 for a source box with sides n_l.
LatticeBox embedding_box(const LatticeBox& source);

/// Antisymmetric reflection extension: 2^{-d/2} psi on the source block,
/// zero on every hyperplane x_l = n_l + 1 or 2 n_l + 2, odd under each
/// reflection. Built by copying the source block and propagating across
/// coordinates 1..d with sign flips.
Wavefunction embed(const Wavefunction& psi);

/// Same extension from the closed-form sign rule, site by site.
Wavefunction embed_by_formula(const Wavefunction& psi);

/// Block variant for Lambda_N = prod [[1, q_l N]] into Omega_N = prod
/// [[1, 2 q_l N + 2]]. Throws UnsupportedPeriod unless every q_l is 1 or 2.
Wavefunction embed_block(const Wavefunction& psi, const std::vector<int>& periods, int N);

/// Recovers psi from its embedding (inverse on the image).
Wavefunction restrict_embedding(const Wavefunction& image, const LatticeBox& source);

/// ||A_periodic(e psi) - lambda e psi|| on the embedding box. Throws
/// std::invalid_argument when psi is not normalized to 1e-10.
double verify_correspondence(const Wavefunction& psi, double lambda);

struct CorrespondenceCertificate {
    double max_residual = 0.0;
    double gram_error = 0.0;
    double inclusion_error = 0.0;
};

/// Embeds the full Dirichlet sine basis on [[1,N]]^d and certifies the
/// eigen-residuals, orthonormality, and spectral inclusion in the periodic
/// spectrum of the embedding box.
CorrespondenceCertificate certify_dirichlet_basis(int N, int d);

/// Zero extension of a (diagonal or kernel) observable to the embedding box.
Observable extend_observable(const Observable& a);

/// Completes an embedded orthonormal eigenfamily (with eigenvalues) to a
/// full orthonormal eigenbasis of the periodic adjacency matrix on the
/// embedding box, eigenvalue class by eigenvalue class: Bloch vectors are
/// projected onto the complement of the family and re-orthonormalized.
/// Family vectors come first within their class, in the given order.
SpectralData complete_periodic_basis(const std::vector<Wavefunction>& family, const std::vector<double>& eigenvalues,
                                     std::optional<double> tol = std::nullopt);

} // namespace qe
