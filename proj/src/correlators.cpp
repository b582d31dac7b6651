#include "qe/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "qe/spectra.hpp"

namespace qe {

double spherical(double lambda, int n)
{
    if (std::abs(lambda) > 2.0)
        throw std::domain_error("spherical: |lambda| must not exceed 2");
    if (n < 0)
        throw std::domain_error("spherical: n must be nonnegative");
    if (n == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 0.5 * lambda;
    for (int k = 1; k < n; ++k) {
        const double next = lambda * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Eigen::MatrixXd chebyshev_operator(int n, int N)
{
    if (N < 1 || n < 0 || n > N - 1)
        throw std::out_of_range("chebyshev_operator: need 0 <= n <= N - 1");
    const Eigen::MatrixXd A = adjacency_matrix(LatticeBox::cube(1, N), BoundaryMode::dirichlet);
    Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(N, N);
    if (n == 0)
        return prev;
    Eigen::MatrixXd cur = 0.5 * A;
    for (int k = 1; k < n; ++k) {
        Eigen::MatrixXd next = A * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Eigen::MatrixXd lattice_chebyshev_pattern(int n, int N)
{
    if (n == 0)
        return Eigen::MatrixXd::Identity(N, N);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N, N);
    for (int x = 0; x < N; ++x) {
        if (x + n < N) {
            T(x, x + n) = 0.5;
            T(x + n, x) = 0.5;
        }
    }
    return T;
}

double chebyshev_boundary_defect(int n, int N)
{
    return (chebyshev_operator(n, N) - lattice_chebyshev_pattern(n, N)).cwiseAbs().sum();
}

Complex correlator(const Observable& K, const Wavefunction& psi, BoundaryMode mode)
{
    if (!(K.box() == psi.box))
        throw std::invalid_argument("correlator: box mismatch");
    const LatticeBox& box = psi.box;
    Complex total = 0.0;
    for (const auto& [z, v] : K.by_offset()) {
        const ShiftSet L = shift_set(box, z);
        if (L.size() == 0)
            continue;
        Complex sum = 0.0;
        for (Index i : L.sites)
            sum += v[i];
        const Complex overlap = inner(psi, translate(psi, z, mode));
        if (mode == BoundaryMode::dirichlet)
            total += sum / static_cast<double>(L.size()) * overlap;
        else
            total += sum / static_cast<double>(box.volume()) * overlap;
    }
    return total;
}

Observable averaged_kernel(const Observable& K)
{
    const LatticeBox& box = K.box();
    if (K.is_diagonal())
        return Observable::constant(box, uniform_average(K));

    Observable out = Observable::kernel(box, K.range());
    for (const auto& [z, v] : K.by_offset()) {
        const ShiftSet L = shift_set(box, z);
        if (L.size() == 0)
            continue;
        Complex sum = 0.0;
        for (Index i : L.sites)
            sum += v[i];
        const Complex mean = sum / static_cast<double>(L.size());
        for (Index i : L.sites)
            out.set(box.delinearize(i), z, mean);
    }
    return out;
}

std::vector<WuchaRow> wucha_error_scan(const std::vector<int>& N_list, int R)
{
    std::vector<WuchaRow> rows;
    for (int N : N_list) {
        if (R < 0 || R > N - 1)
            throw std::invalid_argument("wucha_error_scan: R must lie in [0, N - 1]");
        const double scale = std::sqrt(2.0 / (N + 1));
        Eigen::MatrixXd S(N, N);
        for (int x = 1; x <= N; ++x)
            for (int j = 1; j <= N; ++j)
                S(x - 1, j - 1) = scale * std::sin(j * x * std::numbers::pi / (N + 1));

        for (int z = -R; z <= R; ++z) {
            const int n = std::abs(z);
            WuchaRow row;
            row.N = N;
            row.z = z;
            for (int j = 1; j <= N; ++j) {
                double c = 0.0;
                for (int x = std::max(1, 1 - z); x <= std::min(N, N - z); ++x)
                    c += S(x - 1, j - 1) * S(x + z - 1, j - 1);
                const double lambda = std::clamp(2.0 * std::cos(j * std::numbers::pi / (N + 1)), -2.0, 2.0);
                row.max_error = std::max(row.max_error, std::abs(c - spherical(lambda, n)));
            }
            row.error_times_N = row.max_error * N;
            row.bound = 2.0 / (N + 1) * chebyshev_boundary_defect(n, N);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace qe
