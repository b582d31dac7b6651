#include "qe/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qe {

namespace {

// Householder reduction of the symmetric matrix held in V to tridiagonal
// form. On exit d holds the diagonal, e the subdiagonal (e[0] = 0) and V the
// accumulated orthogonal transformation.
void householder_tridiagonalize(Eigen::MatrixXd& V, std::vector<double>& d, std::vector<double>& e)
{
    const int n = static_cast<int>(V.rows());
    for (int j = 0; j < n; ++j)
        d[j] = V(n - 1, j);

    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (int k = 0; k < i; ++k)
            scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
                V(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0)
                g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j)
                e[j] = 0.0;

            for (int j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += V(k, j) * d[k];
                    e[k] += V(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (int j = 0; j < i; ++j)
                e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k)
                    V(k, j) -= (f * e[k] + g * d[k]);
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (int i = 0; i < n - 1; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k)
                d[k] = V(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k)
                    g += V(k, i + 1) * V(k, j);
                for (int k = 0; k <= i; ++k)
                    V(k, j) -= g * d[k];
            }
        }
        for (int k = 0; k <= i; ++k)
            V(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of V.
void implicit_ql(Eigen::MatrixXd& V, std::vector<double>& d, std::vector<double>& e, const EigenSolveOptions& opt)
{
    const int n = static_cast<int>(V.rows());
    for (int i = 1; i < n; ++i)
        e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double shift_total = 0.0;
    double scale = 0.0;
    for (int l = 0; l < n; ++l) {
        scale = std::max(scale, std::abs(d[l]) + std::abs(e[l]));
        int m = l;
        while (m < n - 1 && std::abs(e[m]) > opt.tolerance * scale)
            ++m;

        if (m > l) {
            int sweeps = 0;
            do {
                if (++sweeps > opt.max_sweeps)
                    throw std::runtime_error("eigensolve_symmetric: QL iteration did not converge");

                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0)
                    r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (int i = l + 2; i < n; ++i)
                    d[i] -= h;
                shift_total += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (int k = 0; k < n; ++k) {
                        h = V(k, i + 1);
                        V(k, i + 1) = s * V(k, i) + c * h;
                        V(k, i) = c * V(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > opt.tolerance * scale);
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }
}

} // namespace

EigenSolveResult eigensolve_symmetric(const Eigen::MatrixXd& H, const EigenSolveOptions& options)
{
    if (H.rows() != H.cols())
        throw std::invalid_argument("eigensolve_symmetric: matrix must be square");
    const Eigen::Index n = H.rows();
    if (n == 0)
        return {};
    if ((H - H.transpose()).cwiseAbs().maxCoeff() > options.symmetry_tolerance)
        throw std::invalid_argument("eigensolve_symmetric: matrix is not symmetric");

    Eigen::MatrixXd V = H;
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
    householder_tridiagonalize(V, d, e);
    implicit_ql(V, d, e, options);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return d[a] < d[b]; });

    EigenSolveResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        result.eigenvalues[j] = d[order[j]];
        Eigen::VectorXd v = V.col(order[j]);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v[i]) > 1e-8) {
                if (v[i] < 0)
                    v = -v;
                break;
            }
        }
        result.eigenvectors.col(j) = v;
    }

    const Eigen::MatrixXd R = H * result.eigenvectors - result.eigenvectors * result.eigenvalues.asDiagonal();
    result.residual = R.colwise().norm().maxCoeff();
    result.gram_error =
        (result.eigenvectors.transpose() * result.eigenvectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    return result;
}

} // namespace qe
