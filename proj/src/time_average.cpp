#include "qe/time_average.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qe {

namespace {

void require_cube(const Observable& a, int N, int d, const char* what)
{
    if (!(a.box() == LatticeBox::cube(d, N)))
        throw std::invalid_argument(std::string(what) + ": observable must live on [[1,N]]^d");
}

void require_diagonal(const Observable& a, const char* what)
{
    if (!a.is_diagonal())
        throw std::invalid_argument(std::string(what) + ": observable must be diagonal");
}

// Real sine matrix S(x,k) = s^(k)(x) with columns in frequency linear order.
Eigen::MatrixXd sine_matrix(int N, int d)
{
    LatticeBox box = LatticeBox::cube(d, N);
    const Index V = box.volume();
    Eigen::MatrixXd one(N, N);
    const double scale = std::sqrt(2.0 / (N + 1));
    for (int x = 1; x <= N; ++x)
        for (int k = 1; k <= N; ++k)
            one(x - 1, k - 1) = scale * std::sin(k * x * std::numbers::pi / (N + 1));
    Eigen::MatrixXd S(V, V);
    for (Index i = 0; i < V; ++i) {
        MultiIndex x = box.delinearize(i);
        for (Index j = 0; j < V; ++j) {
            MultiIndex k = box.delinearize(j);
            double v = 1.0;
            for (int l = 0; l < d; ++l)
                v *= one(x[l] - 1, k[l] - 1);
            S(i, j) = v;
        }
    }
    return S;
}

std::vector<double> frequency_eigenvalues(int N, int d)
{
    LatticeBox box = LatticeBox::cube(d, N);
    std::vector<double> values(static_cast<std::size_t>(box.volume()));
    for (Index i = 0; i < box.volume(); ++i)
        values[static_cast<std::size_t>(i)] = dirichlet_eigenvalue(N, box.delinearize(i));
    return values;
}

} // namespace

double quantum_variance(const SpectralData& basis, const Observable& T)
{
    if (!(T.box() == basis.box))
        throw std::invalid_argument("quantum_variance: box mismatch");
    const Index n = basis.size();
    if (n == 0)
        return 0.0;
    double sum = 0.0;
    if (T.is_diagonal()) {
        Eigen::VectorXcd diag = T.diagonal_values();
        for (Index j = 0; j < n; ++j) {
            Complex q = 0.0;
            for (Index x = 0; x < diag.size(); ++x)
                q += diag[x] * std::norm(basis.eigenvectors(x, j));
            sum += std::norm(q);
        }
    } else {
        for (Index j = 0; j < n; ++j) {
            Wavefunction psi = basis.vector(j);
            sum += std::norm(inner(psi, T.apply(psi)));
        }
    }
    return sum / static_cast<double>(n);
}

double quantum_variance(const SpectralData& basis, const Eigen::MatrixXcd& T)
{
    if (T.rows() != basis.box.volume() || T.cols() != basis.box.volume())
        throw std::invalid_argument("quantum_variance: matrix size does not match box");
    const Index n = basis.size();
    if (n == 0)
        return 0.0;
    double sum = 0.0;
    for (Index j = 0; j < n; ++j) {
        auto v = basis.eigenvectors.col(j);
        sum += std::norm(v.dot(T * v));
    }
    return sum / static_cast<double>(n);
}

double hs_norm(const Eigen::MatrixXcd& M) { return M.norm(); }

Eigen::MatrixXcd time_averaged_observable(const SpectralData& basis, const Observable& a)
{
    if (!(a.box() == basis.box))
        throw std::invalid_argument("time_averaged_observable: box mismatch");
    const Eigen::MatrixXcd A = a.dense();
    const Index V = basis.box.volume();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(V, V);
    for (const auto& cls : basis.classes) {
        Eigen::MatrixXcd P(V, static_cast<Index>(cls.size()));
        for (std::size_t c = 0; c < cls.size(); ++c)
            P.col(static_cast<Index>(c)) = basis.eigenvectors.col(cls[c]);
        Eigen::MatrixXcd compressed = P.adjoint() * A * P;
        out.noalias() += P * compressed * P.adjoint();
    }
    return out;
}

Index default_quadrature_steps(double T)
{
    return std::max<Index>(2, static_cast<Index>(std::ceil(64.0 * T)));
}

Eigen::MatrixXcd numeric_time_average(const Observable& a, const SpectralData& basis, double T,
                                      std::optional<Index> steps)
{
    if (!(T > 0.0))
        throw std::invalid_argument("numeric_time_average: T must be positive");
    const Index n_steps = steps.value_or(default_quadrature_steps(T));
    if (n_steps < 2)
        throw std::invalid_argument("numeric_time_average: at least two quadrature steps required");
    if (!(a.box() == basis.box))
        throw std::invalid_argument("numeric_time_average: box mismatch");

    const Eigen::MatrixXcd& U = basis.eigenvectors;
    const Eigen::MatrixXcd C = U.adjoint() * a.dense() * U;
    const Index n = basis.size();
    const double h = T / static_cast<double>(n_steps);

    // W(k,m) = trapezoid average of exp(i t (lambda_m - lambda_k)); W(m,k) = conj W(k,m)
    Eigen::MatrixXcd W(n, n);
    for (Index k = 0; k < n; ++k) {
        W(k, k) = 1.0;
        for (Index m = k + 1; m < n; ++m) {
            const double omega = basis.eigenvalues[m] - basis.eigenvalues[k];
            Complex acc = 0.5 * (1.0 + std::polar(1.0, omega * T));
            for (Index s = 1; s < n_steps; ++s)
                acc += std::polar(1.0, omega * h * static_cast<double>(s));
            W(k, m) = acc / static_cast<double>(n_steps);
            W(m, k) = std::conj(W(k, m));
        }
    }
    return U * C.cwiseProduct(W) * U.adjoint();
}

Complex fourier_coefficient(const Observable& a, const Frequency& theta_numerators, int N)
{
    require_diagonal(a, "fourier_coefficient");
    const LatticeBox& box = a.box();
    if (static_cast<int>(theta_numerators.size()) != box.dim())
        throw std::invalid_argument("fourier_coefficient: frequency dimension mismatch");
    const Eigen::VectorXcd diag = a.diagonal_values();
    const long long period = 2LL * (N + 1);
    Complex sum = 0.0;
    for (Index i = 0; i < box.volume(); ++i) {
        if (diag[i] == Complex(0.0))
            continue;
        MultiIndex x = box.delinearize(i);
        long long phase = 0;
        for (int l = 0; l < box.dim(); ++l)
            phase += static_cast<long long>(theta_numerators[l]) * x[l];
        phase %= period;
        sum += std::polar(1.0, -std::numbers::pi * static_cast<double>(phase) / (N + 1)) * diag[i];
    }
    return sum;
}

Eigen::MatrixXcd center_matrix(const Observable& a, int N)
{
    require_diagonal(a, "center_matrix");
    const int d = a.box().dim();
    require_cube(a, N, d, "center_matrix");
    const Eigen::MatrixXd S = sine_matrix(N, d);
    return S.transpose().cast<Complex>() * a.diagonal_values().asDiagonal() * S.cast<Complex>();
}

Eigen::MatrixXcd center_matrix_from_fourier(const Observable& a, int N)
{
    require_diagonal(a, "center_matrix_from_fourier");
    const int d = a.box().dim();
    require_cube(a, N, d, "center_matrix_from_fourier");
    const LatticeBox box = a.box();
    const Index V = box.volume();
    const auto signs = sign_vectors(d);
    const double norm = std::pow(2.0 * (N + 1), -d);

    std::map<Frequency, Complex> cache;
    auto coefficient = [&](const Frequency& t) -> Complex {
        auto it = cache.find(t);
        if (it == cache.end())
            it = cache.emplace(t, fourier_coefficient(a, t, N)).first;
        return it->second;
    };

    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(V, V);
    for (Index ik = 0; ik < V; ++ik) {
        const MultiIndex k = box.delinearize(ik);
        for (Index im = 0; im < V; ++im) {
            const MultiIndex m = box.delinearize(im);
            Complex acc = 0.0;
            for (const auto& e : signs) {
                for (const auto& ep : signs) {
                    Frequency t(static_cast<std::size_t>(d));
                    int sign = 1;
                    for (int l = 0; l < d; ++l) {
                        t[l] = k[l] * e[l] + m[l] * ep[l];
                        sign *= -e[l] * ep[l];
                    }
                    acc += static_cast<double>(sign) * coefficient(t);
                }
            }
            C(ik, im) = norm * acc;
        }
    }
    return C;
}

Eigen::MatrixXcd masked_center_matrix(const Observable& a, int N, std::optional<double> tol)
{
    const int d = a.box().dim();
    const double t = tol.value_or(default_degeneracy_tolerance(d));
    Eigen::MatrixXcd C = center_matrix(a, N);
    const auto lambda = frequency_eigenvalues(N, d);
    for (Index k = 0; k < C.rows(); ++k)
        for (Index m = 0; m < C.cols(); ++m)
            if (std::abs(lambda[k] - lambda[m]) > t)
                C(k, m) = 0.0;
    return C;
}

ThetaDecomposition theta_decompose(const Observable& a, int N, int d, std::optional<double> tol)
{
    require_diagonal(a, "theta_decompose");
    require_cube(a, N, d, "theta_decompose");
    const double t = tol.value_or(default_degeneracy_tolerance(d));
    const LatticeBox box = a.box();
    const Index V = box.volume();
    const auto lambda = frequency_eigenvalues(N, d);
    const auto signs = sign_vectors(d);
    const double norm = std::pow(2.0 * (N + 1), -d);

    std::map<Frequency, std::map<std::pair<Index, Index>, Complex>> accum;
    for (Index ik = 0; ik < V; ++ik) {
        const MultiIndex k = box.delinearize(ik);
        for (Index im = 0; im < V; ++im) {
            if (std::abs(lambda[ik] - lambda[im]) > t)
                continue;
            const MultiIndex m = box.delinearize(im);
            for (const auto& e : signs) {
                for (const auto& ep : signs) {
                    Frequency theta(static_cast<std::size_t>(d));
                    int sign = 1;
                    for (int l = 0; l < d; ++l) {
                        theta[l] = k[l] * e[l] + m[l] * ep[l];
                        sign *= -e[l] * ep[l];
                    }
                    accum[theta][{ik, im}] += static_cast<double>(sign);
                }
            }
        }
    }

    ThetaDecomposition out;
    for (auto& [theta, cells] : accum) {
        ThetaComponent comp{theta, fourier_coefficient(a, theta, N), {}};
        comp.entries.reserve(cells.size());
        for (const auto& [km, weight] : cells)
            comp.entries.push_back({km.first, km.second, norm * weight * comp.coefficient});
        out.emplace(theta, std::move(comp));
    }
    return out;
}

Eigen::MatrixXcd to_dense(const ThetaComponent& component, Index volume)
{
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(volume, volume);
    for (const auto& e : component.entries)
        M(e.k, e.m) += e.value;
    return M;
}

Eigen::MatrixXcd assemble(const ThetaDecomposition& decomposition, Index volume)
{
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(volume, volume);
    for (const auto& [theta, comp] : decomposition)
        for (const auto& e : comp.entries)
            M(e.k, e.m) += e.value;
    return M;
}

std::int64_t theta_support_bound(int N, int d)
{
    std::int64_t b = 2;
    for (int l = 0; l < d; ++l)
        b *= 4;
    for (int l = 1; l < d; ++l)
        b *= N;
    return b;
}

BesselCheck bessel_bound_check(const Observable& a, int N, int d)
{
    require_diagonal(a, "bessel_bound_check");
    require_cube(a, N, d, "bessel_bound_check");
    const double scale = std::pow(static_cast<double>(N + 1), -2.0 * d);
    double lhs = 0.0;
    for (const auto& theta : frequency_grid(N, d))
        lhs += scale * std::norm(fourier_coefficient(a, theta, N));
    const double sup = a.sup_norm();
    return {lhs, std::pow(4.0, d) * sup * sup};
}

Complex padded_exponential_inner(const Frequency& theta, const Frequency& theta_prime, int N)
{
    if (theta.size() != theta_prime.size())
        throw std::invalid_argument("padded_exponential_inner: dimension mismatch");
    const long long period = 2LL * (N + 1);
    Complex prod = 1.0;
    for (std::size_t l = 0; l < theta.size(); ++l) {
        Complex s = 0.0;
        for (int x = 0; x <= N; ++x) {
            long long phase = (static_cast<long long>(theta_prime[l] - theta[l]) * x) % period;
            s += std::polar(1.0, std::numbers::pi * static_cast<double>(phase) / (N + 1));
        }
        prod *= s / static_cast<double>(N + 1);
    }
    return prod;
}

int bessel_class(const Frequency& theta_numerators)
{
    int id = 0;
    for (int t : theta_numerators) {
        const int half = t >= 0 ? 0 : 1;
        const int parity = ((t % 2) + 2) % 2;
        id = id * 4 + half * 2 + parity;
    }
    return id;
}

double variance_decay_bound(int N, int d, double sup_norm)
{
    const double c1 = std::pow(2.0 * std::pow(4.0, d), 2) * std::pow(16.0, d);
    return (c1 / N + 2.0 * d * d / std::pow(N + 1.0, 2)) * sup_norm * sup_norm;
}

} // namespace qe
