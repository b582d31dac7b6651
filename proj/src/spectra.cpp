#include "qe/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qe {

namespace {

void check_frequency(const MultiIndex& k, int d, int lo, int hi, const char* what)
{
    if (static_cast<int>(k.size()) != d)
        throw std::invalid_argument(std::string(what) + ": frequency dimension mismatch");
    for (int c : k) {
        if (c < lo || c > hi)
            throw std::out_of_range(std::string(what) + ": frequency outside its index range");
    }
}

std::vector<MultiIndex> enumerate_box(const LatticeBox& box)
{
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(box.volume()));
    for (Index i = 0; i < box.volume(); ++i)
        out.push_back(box.delinearize(i));
    return out;
}

SpectralData sorted_spectral_data(LatticeBox box, std::vector<double> values, Eigen::MatrixXcd vectors,
                                  std::vector<MultiIndex> labels, double tol)
{
    std::vector<Index> order(values.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values[a] < values[b]; });

    SpectralData data{std::move(box), Eigen::VectorXd(order.size()), Eigen::MatrixXcd(vectors.rows(), order.size()),
                      {}, {}};
    for (std::size_t j = 0; j < order.size(); ++j) {
        data.eigenvalues[static_cast<Index>(j)] = values[order[j]];
        data.eigenvectors.col(static_cast<Index>(j)) = vectors.col(order[j]);
        data.frequencies.push_back(labels[order[j]]);
    }
    data.classes = degeneracy_classes(data.eigenvalues, tol);
    return data;
}

} // namespace

double default_degeneracy_tolerance(int d) { return 1e-9 * 2.0 * d; }

double dirichlet_eigenvalue(int N, const MultiIndex& k)
{
    double s = 0.0;
    for (int c : k)
        s += 2.0 * std::cos(c * std::numbers::pi / (N + 1));
    return s;
}

double periodic_eigenvalue(int N, const MultiIndex& k)
{
    double s = 0.0;
    for (int c : k)
        s += 2.0 * std::cos(2.0 * std::numbers::pi * c / N);
    return s;
}

EigenPair dirichlet_eigenpair(int N, int d, const MultiIndex& k)
{
    check_frequency(k, d, 1, N, "dirichlet_eigenpair");
    LatticeBox box = LatticeBox::cube(d, N);
    Wavefunction s(box);
    const double scale = std::pow(2.0 / (N + 1), 0.5 * d);
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex x = box.delinearize(i);
        double v = scale;
        for (int l = 0; l < d; ++l)
            v *= std::sin(k[l] * x[l] * std::numbers::pi / (N + 1));
        s.values[i] = v;
    }
    return {dirichlet_eigenvalue(N, k), std::move(s)};
}

EigenPair periodic_eigenpair(int N, int d, const MultiIndex& k)
{
    check_frequency(k, d, 0, N - 1, "periodic_eigenpair");
    LatticeBox box = LatticeBox::cube(d, N);
    Wavefunction b(box);
    const double scale = std::pow(static_cast<double>(N), -0.5 * d);
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex x = box.delinearize(i);
        // reduce k*x mod N before scaling to keep the phase exact
        long long phase = 0;
        for (int l = 0; l < d; ++l)
            phase = (phase + static_cast<long long>(k[l]) * x[l]) % N;
        b.values[i] = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(phase) / N);
    }
    return {periodic_eigenvalue(N, k), std::move(b)};
}

Wavefunction apply_adjacency(const Wavefunction& psi, BoundaryMode mode)
{
    const LatticeBox& box = psi.box;
    Wavefunction out(box);
    MultiIndex y;
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex x = box.delinearize(i);
        Complex acc = 0.0;
        for (int l = 0; l < box.dim(); ++l) {
            for (int step : {-1, 1}) {
                y = x;
                y[l] += step;
                if (box.contains(y))
                    acc += psi.values[box.linearize(y)];
                else if (mode == BoundaryMode::periodic)
                    acc += psi.values[box.linearize(box.wrap(y))];
            }
        }
        out.values[i] = acc;
    }
    return out;
}

Eigen::MatrixXd adjacency_matrix(const LatticeBox& box, BoundaryMode mode)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(box.volume(), box.volume());
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex x = box.delinearize(i);
        for (int l = 0; l < box.dim(); ++l) {
            for (int step : {-1, 1}) {
                MultiIndex y = x;
                y[l] += step;
                if (box.contains(y))
                    a(i, box.linearize(y)) += 1.0;
                else if (mode == BoundaryMode::periodic)
                    a(i, box.linearize(box.wrap(y))) += 1.0;
            }
        }
    }
    return a;
}

std::vector<std::vector<Index>> degeneracy_classes(const Eigen::VectorXd& sorted_eigenvalues, double tol)
{
    std::vector<std::vector<Index>> classes;
    for (Index j = 0; j < sorted_eigenvalues.size(); ++j) {
        if (j > 0 && sorted_eigenvalues[j] < sorted_eigenvalues[j - 1])
            throw std::invalid_argument("degeneracy_classes: eigenvalues must be sorted ascending");
        if (classes.empty() || sorted_eigenvalues[j] - sorted_eigenvalues[j - 1] > tol)
            classes.emplace_back();
        classes.back().push_back(j);
    }
    return classes;
}

SpectralData dirichlet_basis(int N, int d, std::optional<double> tol)
{
    LatticeBox box = LatticeBox::cube(d, N);
    std::vector<MultiIndex> labels = enumerate_box(box);
    std::vector<double> values;
    Eigen::MatrixXcd vectors(box.volume(), box.volume());
    for (std::size_t j = 0; j < labels.size(); ++j) {
        EigenPair p = dirichlet_eigenpair(N, d, labels[j]);
        values.push_back(p.eigenvalue);
        vectors.col(static_cast<Index>(j)) = p.vector.values;
    }
    return sorted_spectral_data(box, std::move(values), std::move(vectors), std::move(labels),
                                tol.value_or(default_degeneracy_tolerance(d)));
}

SpectralData periodic_basis(int N, int d, std::optional<double> tol)
{
    LatticeBox box = LatticeBox::cube(d, N);
    std::vector<MultiIndex> labels;
    std::vector<double> values;
    Eigen::MatrixXcd vectors(box.volume(), box.volume());
    for (Index j = 0; j < box.volume(); ++j) {
        MultiIndex k = box.delinearize(j);
        for (int& c : k)
            c -= 1;
        EigenPair p = periodic_eigenpair(N, d, k);
        values.push_back(p.eigenvalue);
        vectors.col(j) = p.vector.values;
        labels.push_back(std::move(k));
    }
    return sorted_spectral_data(box, std::move(values), std::move(vectors), std::move(labels),
                                tol.value_or(default_degeneracy_tolerance(d)));
}

std::int64_t lemma_c1_count(int N, int d, const Frequency& theta_numerators, const SignVector& eps,
                            const SignVector& eps_prime, std::optional<double> tol)
{
    if (static_cast<int>(theta_numerators.size()) != d || static_cast<int>(eps.size()) != d ||
        static_cast<int>(eps_prime.size()) != d)
        throw std::invalid_argument("lemma_c1_count: dimension mismatch");
    bool zero = true;
    for (int l = 0; l < d; ++l) {
        if (theta_numerators[l] < -2 * N || theta_numerators[l] > 2 * N)
            throw std::out_of_range("lemma_c1_count: theta outside (1/(N+1))[[-2N,2N]]^d");
        if (std::abs(eps[l]) != 1 || std::abs(eps_prime[l]) != 1)
            throw std::invalid_argument("lemma_c1_count: sign entries must be +1 or -1");
        zero = zero && theta_numerators[l] == 0;
    }
    if (zero)
        throw std::invalid_argument("lemma_c1_count: theta = 0 is handled by the diagonal component");

    const double t = tol.value_or(default_degeneracy_tolerance(d));
    // per-coordinate cosine table, index 1..N
    std::vector<double> cosines(static_cast<std::size_t>(N) + 1);
    for (int c = 1; c <= N; ++c)
        cosines[c] = 2.0 * std::cos(c * std::numbers::pi / (N + 1));

    LatticeBox box = LatticeBox::cube(d, N);
    std::int64_t count = 0;
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex m = box.delinearize(i);
        double diff = 0.0;
        bool inside = true;
        for (int l = 0; l < d && inside; ++l) {
            // k_l eps_l + m_l eps'_l = t_l  =>  k_l = eps_l (t_l - eps'_l m_l)
            const int k = eps[l] * (theta_numerators[l] - eps_prime[l] * m[l]);
            inside = k >= 1 && k <= N;
            if (inside)
                diff += cosines[k] - cosines[m[l]];
        }
        if (inside && std::abs(diff) <= t)
            ++count;
    }
    return count;
}

std::int64_t lemma_c1_bound(int N, int d)
{
    std::int64_t b = 2;
    for (int l = 1; l < d; ++l)
        b *= N;
    return b;
}

std::vector<SignVector> sign_vectors(int d)
{
    std::vector<SignVector> out;
    for (int mask = 0; mask < (1 << d); ++mask) {
        SignVector s(static_cast<std::size_t>(d));
        for (int l = 0; l < d; ++l)
            s[l] = (mask >> (d - 1 - l)) & 1 ? -1 : 1;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Frequency> frequency_grid(int N, int d)
{
    LatticeBox grid = LatticeBox::cube(d, 4 * N + 1);
    std::vector<Frequency> out;
    out.reserve(static_cast<std::size_t>(grid.volume()));
    for (Index i = 0; i < grid.volume(); ++i) {
        Frequency t = grid.delinearize(i);
        for (int& c : t)
            c -= 2 * N + 1;
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace qe
