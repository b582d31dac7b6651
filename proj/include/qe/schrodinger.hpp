#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qe/eigensolver.hpp"
#include "qe/lattice.hpp"
#include "qe/spectra.hpp"

namespace qe {

/// Potential periodic with respect to q_1 e_1, ..., q_d e_d, given by its
/// values on the fundamental block prod [[1, q_l]] in row-major order.
struct PeriodicPotential {
    std::vector<int> periods;
    std::vector<double> values;

    PeriodicPotential(std::vector<int> periods, std::vector<double> values);

    static PeriodicPotential zero(int d);
    /// d = 1, q = (2): M on even sites, 0 on odd sites.
    static PeriodicPotential alternating(double M);

    /// Fields d, q, values.
    static PeriodicPotential from_json(const nlohmann::json& j);
    static PeriodicPotential load(const std::string& path);
    nlohmann::json to_json() const;

    int dim() const { return static_cast<int>(periods.size()); }
    LatticeBox cell() const { return LatticeBox(periods); }
    /// V(x) for any integer site x, by periodic extension.
    double operator()(const MultiIndex& x) const;
};

/// Lambda_N = prod [[1, q_l N]].
LatticeBox truncation_box(const std::vector<int>& periods, int N);

struct TruncatedOperator {
    LatticeBox box;
    PeriodicPotential potential;
    BoundaryMode mode;

    Eigen::MatrixXd dense() const;
    Wavefunction apply(const Wavefunction& psi) const;
};

TruncatedOperator build_operator(const PeriodicPotential& V, int N, BoundaryMode mode);
/// Same operator on an explicit box (used for Omega_N with sides 2 q_l N + 2).
TruncatedOperator build_operator_on(const PeriodicPotential& V, LatticeBox box, BoundaryMode mode);

/// Eigendecomposition of a truncated operator packaged with degeneracy classes.
SpectralData schrodinger_basis(const TruncatedOperator& H, std::optional<double> tol = std::nullopt);

struct MassProfile {
    int low_band_count = 0;
    int high_band_count = 0;
    /// Even-site mass of each eigenfunction in [-2,2], odd-site mass of each
    /// eigenfunction in [M-2, M+2].
    std::vector<double> low_even_mass;
    std::vector<double> high_odd_mass;
    double max_low_even_mass = 0.0;
    double max_high_odd_mass = 0.0;
    double bound = 0.0; // 4 / (M-2)^2
    double eigen_residual = 0.0;

    bool passed(int N) const
    {
        return low_band_count == N && high_band_count == N && max_low_even_mass <= bound && max_high_odd_mass <= bound;
    }
};

/// d = 1, q = (2), V = (0, M): band counts and per-band sublattice masses.
/// Throws std::invalid_argument for M <= 4 (overlapping bands).
MassProfile counterexample_mass_profile(double M, int N);

/// Whether sum_k a(x+k) over the periodic translates in Lambda_N is the same
/// for every x in the fundamental block, to tol.
bool satisfies_block_condition(const Observable& a, const std::vector<int>& periods, int N, double tol = 1e-12);

struct PartialQeOptions {
    /// Reject observables violating the block-sum condition.
    bool check_block_condition = true;
    /// Permit periods beyond 2 (exploratory scans).
    bool allow_long_periods = false;
};

struct PartialQeResult {
    double variance = 0.0;
    bool block_condition = false;
    double eigen_residual = 0.0;
};

/// Var(a - <a> Id) over the Dirichlet eigenbasis of H_{Lambda_N}.
PartialQeResult partial_qe_experiment(const PeriodicPotential& V, int N, const Observable& a,
                                      const PartialQeOptions& options = {});

struct BoundaryPerturbation {
    Index rank = 0;
    Index nonzero_rows = 0; // upper bound on the rank, O(N^{d-1})
};

/// Rank of the periodic-minus-Dirichlet truncation difference on Lambda_N.
BoundaryPerturbation boundary_perturbation_rank(const PeriodicPotential& V, int N);

/// Embeds every Dirichlet eigenvector of H_{Lambda_N} into Omega_N and
/// returns the largest residual under the periodic operator on Omega_N.
double verify_block_correspondence(const PeriodicPotential& V, int N);

} // namespace qe
