#include "qe/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

namespace qe {

namespace {

bool on_zero_hyperplane(const MultiIndex& y, const LatticeBox& source)
{
    for (int l = 0; l < source.dim(); ++l) {
        const int n = source.side(l);
        if (y[l] == n + 1 || y[l] == 2 * n + 2)
            return true;
    }
    return false;
}

// Bloch vector on a box with arbitrary sides, frequency k_l in [[0, side_l - 1]].
Eigen::VectorXcd bloch_vector(const LatticeBox& box, const MultiIndex& k)
{
    Eigen::VectorXcd v(box.volume());
    const double scale = 1.0 / std::sqrt(static_cast<double>(box.volume()));
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex x = box.delinearize(i);
        double phase = 0.0;
        for (int l = 0; l < box.dim(); ++l) {
            const int n = box.side(l);
            phase += static_cast<double>((static_cast<long long>(k[l]) * x[l]) % n) / n;
        }
        v[i] = std::polar(scale, 2.0 * std::numbers::pi * phase);
    }
    return v;
}

double bloch_eigenvalue(const LatticeBox& box, const MultiIndex& k)
{
    double s = 0.0;
    for (int l = 0; l < box.dim(); ++l)
        s += 2.0 * std::cos(2.0 * std::numbers::pi * k[l] / box.side(l));
    return s;
}

std::vector<double> periodic_spectrum(const LatticeBox& box)
{
    std::vector<double> values;
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex k = box.delinearize(i);
        for (int& c : k)
            c -= 1;
        values.push_back(bloch_eigenvalue(box, k));
    }
    std::sort(values.begin(), values.end());
    return values;
}

} // namespace

MultiIndex reflect(const MultiIndex& x, int l, const LatticeBox& box)
{
    if (l < 0 || l >= box.dim())
        throw std::out_of_range("reflect: coordinate index outside [0, d)");
    if (box.side(l) % 2 != 0 || box.side(l) < 2)
        throw std::invalid_argument("reflect: reflected side must be even");
    if (!box.contains(x))
        throw std::out_of_range("reflect: site outside box");
    MultiIndex y(x);
    y[l] = box.side(l) - x[l];
    if (y[l] == 0)
        y[l] = box.side(l);
    return y;
}

LatticeBox embedding_box(const LatticeBox& source)
{
    std::vector<int> sides;
    for (int s : source.sides())
        sides.push_back(2 * s + 2);
    return LatticeBox(std::move(sides));
}

Wavefunction embed(const Wavefunction& psi)
{
    const LatticeBox& source = psi.box;
    const LatticeBox target = embedding_box(source);
    const int d = source.dim();
    Wavefunction out(target);
    const double scale = std::pow(2.0, -0.5 * d);

    for (Index i = 0; i < source.volume(); ++i)
        out.values[target.linearize(source.delinearize(i))] = scale * psi.values[i];

    for (int l = 0; l < d; ++l) {
        const int n = source.side(l);
        for (Index i = 0; i < target.volume(); ++i) {
            MultiIndex y = target.delinearize(i);
            if (y[l] < n + 2 || y[l] > 2 * n + 1)
                continue;
            out.values[i] = -out.values[target.linearize(reflect(y, l, target))];
        }
    }
    return out;
}

Wavefunction embed_by_formula(const Wavefunction& psi)
{
    const LatticeBox& source = psi.box;
    const LatticeBox target = embedding_box(source);
    const int d = source.dim();
    Wavefunction out(target);
    const double scale = std::pow(2.0, -0.5 * d);
    for (Index i = 0; i < target.volume(); ++i) {
        MultiIndex y = target.delinearize(i);
        if (on_zero_hyperplane(y, source))
            continue;
        double sign = scale;
        for (int l = 0; l < d; ++l) {
            const int n = source.side(l);
            if (y[l] > n) {
                y[l] = 2 * n + 2 - y[l];
                sign = -sign;
            }
        }
        out.values[i] = sign * psi.values[source.linearize(y)];
    }
    return out;
}

Wavefunction embed_block(const Wavefunction& psi, const std::vector<int>& periods, int N)
{
    const LatticeBox& source = psi.box;
    if (static_cast<int>(periods.size()) != source.dim())
        throw std::invalid_argument("embed_block: period count does not match dimension");
    for (int l = 0; l < source.dim(); ++l) {
        if (periods[l] != 1 && periods[l] != 2)
            throw UnsupportedPeriod("embed_block: period lengths must be 1 or 2");
        if (source.side(l) != periods[l] * N)
            throw std::invalid_argument("embed_block: source box is not Lambda_N for the given periods");
    }
    return embed(psi);
}

Wavefunction restrict_embedding(const Wavefunction& image, const LatticeBox& source)
{
    if (!(image.box == embedding_box(source)))
        throw std::invalid_argument("restrict_embedding: image box does not match source");
    Wavefunction out(source);
    const double scale = std::pow(2.0, 0.5 * source.dim());
    for (Index i = 0; i < source.volume(); ++i)
        out.values[i] = scale * image.values[image.box.linearize(source.delinearize(i))];
    return out;
}

double verify_correspondence(const Wavefunction& psi, double lambda)
{
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("verify_correspondence: eigenfunction must be normalized");
    const Wavefunction e = embed(psi);
    const Wavefunction ae = apply_adjacency(e, BoundaryMode::periodic);
    return (ae.values - lambda * e.values).norm();
}

CorrespondenceCertificate certify_dirichlet_basis(int N, int d)
{
    const SpectralData basis = dirichlet_basis(N, d);
    const LatticeBox target = embedding_box(basis.box);
    Eigen::MatrixXcd E(target.volume(), basis.size());
    CorrespondenceCertificate cert;
    for (Index j = 0; j < basis.size(); ++j) {
        cert.max_residual = std::max(cert.max_residual, verify_correspondence(basis.vector(j), basis.eigenvalues[j]));
        E.col(j) = embed(basis.vector(j)).values;
    }
    const Eigen::MatrixXcd gram = E.adjoint() * E - Eigen::MatrixXcd::Identity(basis.size(), basis.size());
    cert.gram_error = gram.cwiseAbs().maxCoeff();

    const std::vector<double> spectrum = periodic_spectrum(target);
    for (Index j = 0; j < basis.size(); ++j) {
        const double lambda = basis.eigenvalues[j];
        auto it = std::lower_bound(spectrum.begin(), spectrum.end(), lambda);
        double best = std::numeric_limits<double>::infinity();
        if (it != spectrum.end())
            best = std::min(best, *it - lambda);
        if (it != spectrum.begin())
            best = std::min(best, lambda - *std::prev(it));
        cert.inclusion_error = std::max(cert.inclusion_error, best);
    }
    return cert;
}

Observable extend_observable(const Observable& a)
{
    const LatticeBox& source = a.box();
    const LatticeBox target = embedding_box(source);
    if (a.is_diagonal()) {
        Eigen::VectorXcd values = Eigen::VectorXcd::Zero(target.volume());
        const Eigen::VectorXcd diag = a.diagonal_values();
        for (Index i = 0; i < source.volume(); ++i)
            values[target.linearize(source.delinearize(i))] = diag[i];
        return Observable::diagonal(target, std::move(values));
    }
    Observable out = Observable::kernel(target, a.range());
    for (const auto& [z, v] : a.by_offset()) {
        for (Index i = 0; i < source.volume(); ++i) {
            if (v[i] != Complex(0.0))
                out.set(source.delinearize(i), z, v[i]);
        }
    }
    return out;
}

SpectralData complete_periodic_basis(const std::vector<Wavefunction>& family, const std::vector<double>& eigenvalues,
                                     std::optional<double> tol)
{
    if (family.empty())
        throw std::invalid_argument("complete_periodic_basis: empty family");
    if (family.size() != eigenvalues.size())
        throw std::invalid_argument("complete_periodic_basis: one eigenvalue per family member required");
    const LatticeBox box = family.front().box;
    const double t = tol.value_or(default_degeneracy_tolerance(box.dim()));
    const Index V = box.volume();

    std::vector<MultiIndex> labels;
    std::vector<double> bloch_values;
    for (Index i = 0; i < V; ++i) {
        MultiIndex k = box.delinearize(i);
        for (int& c : k)
            c -= 1;
        bloch_values.push_back(bloch_eigenvalue(box, k));
        labels.push_back(std::move(k));
    }
    std::vector<Index> order(static_cast<std::size_t>(V));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return bloch_values[a] < bloch_values[b]; });
    Eigen::VectorXd sorted(V);
    for (Index j = 0; j < V; ++j)
        sorted[j] = bloch_values[order[j]];
    const auto bloch_classes = degeneracy_classes(sorted, t);

    std::vector<bool> used(family.size(), false);
    SpectralData out{box, Eigen::VectorXd(V), Eigen::MatrixXcd(V, V), {}, {}};
    Index column = 0;
    for (const auto& cls : bloch_classes) {
        const double value = sorted[cls.front()];
        const double top = sorted[cls.back()];
        std::vector<Eigen::VectorXcd> q;
        for (std::size_t f = 0; f < family.size(); ++f) {
            if (!used[f] && eigenvalues[f] >= value - t && eigenvalues[f] <= top + t) {
                if (!(family[f].box == box))
                    throw std::invalid_argument("complete_periodic_basis: family members live on different boxes");
                q.push_back(family[f].values);
                used[f] = true;
            }
        }
        if (q.size() > cls.size())
            throw std::runtime_error("complete_periodic_basis: family exceeds eigenspace dimension");
        for (Index member : cls) {
            if (q.size() == cls.size())
                break;
            Eigen::VectorXcd r = bloch_vector(box, labels[order[member]]);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& v : q)
                    r -= v.dot(r) * v;
            const double norm = r.norm();
            if (norm > 1e-8)
                q.push_back(r / norm);
        }
        if (q.size() != cls.size())
            throw std::runtime_error("complete_periodic_basis: could not span eigenspace");
        for (const auto& v : q) {
            out.eigenvalues[column] = value;
            out.eigenvectors.col(column) = v;
            ++column;
        }
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::runtime_error("complete_periodic_basis: family eigenvalue outside the periodic spectrum");
    out.classes = degeneracy_classes(out.eigenvalues, t);
    return out;
}

} // namespace qe
