#pragma once

#include <Eigen/Dense>

namespace qe {

struct EigenSolveOptions {
    /// Off-diagonal deflation threshold relative to the local matrix scale.
    double tolerance = 1e-12;
    /// QL sweeps allowed per eigenvalue.
    int max_sweeps = 64;
    /// Reject inputs whose asymmetry exceeds this (absolute, entry-wise).
    double symmetry_tolerance = 1e-12;
};

struct EigenSolveResult {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // orthonormal columns
    double residual = 0.0;        // max_j ||H v_j - lambda_j v_j||
    double gram_error = 0.0;      // max |V^T V - I|
};

/// Dense symmetric eigensolver: Householder reduction to tridiagonal form
/// followed by implicit-shift QL. Each eigenvector has its first entry of
/// magnitude above 1e-8 made positive.
EigenSolveResult eigensolve_symmetric(const Eigen::MatrixXd& H, const EigenSolveOptions& options = {});

} // namespace qe
