#include "qe/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qe {

BoundaryMode parse_boundary_mode(const std::string& name)
{
    if (name == "dirichlet")
        return BoundaryMode::dirichlet;
    if (name == "periodic")
        return BoundaryMode::periodic;
    throw std::invalid_argument("unknown boundary mode '" + name + "'");
}

std::string to_string(BoundaryMode mode)
{
    return mode == BoundaryMode::dirichlet ? "dirichlet" : "periodic";
}

LatticeBox::LatticeBox(std::vector<int> sides) : sides_(std::move(sides))
{
    if (sides_.empty())
        throw std::invalid_argument("LatticeBox: dimension must be at least 1");
    for (int s : sides_) {
        if (s < 1)
            throw std::invalid_argument("LatticeBox: every side must be positive");
    }
    strides_.assign(sides_.size(), 1);
    for (int l = dim() - 2; l >= 0; --l)
        strides_[l] = strides_[l + 1] * sides_[l + 1];
    volume_ = strides_[0] * sides_[0];
}

LatticeBox LatticeBox::cube(int d, int n)
{
    if (d < 1)
        throw std::invalid_argument("LatticeBox: dimension must be at least 1");
    return LatticeBox(std::vector<int>(static_cast<std::size_t>(d), n));
}

int LatticeBox::min_side() const
{
    return *std::min_element(sides_.begin(), sides_.end());
}

bool LatticeBox::contains(const MultiIndex& x) const
{
    if (x.size() != sides_.size())
        return false;
    for (std::size_t l = 0; l < x.size(); ++l) {
        if (x[l] < 1 || x[l] > sides_[l])
            return false;
    }
    return true;
}

Index LatticeBox::linearize(const MultiIndex& x) const
{
    if (!contains(x))
        throw std::out_of_range("linearize: site outside box");
    Index i = 0;
    for (std::size_t l = 0; l < x.size(); ++l)
        i += static_cast<Index>(x[l] - 1) * strides_[l];
    return i;
}

MultiIndex LatticeBox::delinearize(Index i) const
{
    if (i < 0 || i >= volume_)
        throw std::out_of_range("delinearize: linear index outside box");
    MultiIndex x(sides_.size());
    for (std::size_t l = 0; l < sides_.size(); ++l) {
        x[l] = static_cast<int>(i / strides_[l]) + 1;
        i %= strides_[l];
    }
    return x;
}

MultiIndex LatticeBox::wrap(const MultiIndex& x) const
{
    MultiIndex w(x.size());
    for (std::size_t l = 0; l < x.size(); ++l) {
        int r = (x[l] - 1) % sides_[l];
        if (r < 0)
            r += sides_[l];
        w[l] = r + 1;
    }
    return w;
}

Index linearize(const LatticeBox& box, const MultiIndex& x) { return box.linearize(x); }
MultiIndex delinearize(const LatticeBox& box, Index i) { return box.delinearize(i); }

int l1_norm(const Offset& z)
{
    int s = 0;
    for (int c : z)
        s += std::abs(c);
    return s;
}

MultiIndex shifted(const MultiIndex& x, const Offset& z)
{
    MultiIndex y(x);
    for (std::size_t l = 0; l < y.size(); ++l)
        y[l] += z[l];
    return y;
}

Offset negated(const Offset& z)
{
    Offset m(z);
    for (int& c : m)
        c = -c;
    return m;
}

std::vector<Offset> offsets_within(int d, int R)
{
    std::vector<Offset> out;
    Offset z(static_cast<std::size_t>(d), -R);
    while (true) {
        if (l1_norm(z) <= R)
            out.push_back(z);
        int l = d - 1;
        while (l >= 0 && z[l] == R) {
            z[l] = -R;
            --l;
        }
        if (l < 0)
            break;
        ++z[l];
    }
    return out;
}

Wavefunction::Wavefunction(LatticeBox b) : box(std::move(b)), values(Eigen::VectorXcd::Zero(box.volume())) {}

Wavefunction::Wavefunction(LatticeBox b, Eigen::VectorXcd v) : box(std::move(b)), values(std::move(v))
{
    if (values.size() != box.volume())
        throw std::invalid_argument("Wavefunction: value count does not match box volume");
}

Complex inner(const Wavefunction& psi, const Wavefunction& phi)
{
    if (!(psi.box == phi.box))
        throw std::invalid_argument("inner: box mismatch");
    return psi.values.dot(phi.values);
}

ShiftSet shift_set(const LatticeBox& box, const Offset& z)
{
    ShiftSet set{z, {}};
    for (Index i = 0; i < box.volume(); ++i) {
        if (box.contains(shifted(box.delinearize(i), z)))
            set.sites.push_back(i);
    }
    return set;
}

Observable::Observable(LatticeBox box, Kind kind, int range) : box_(std::move(box)), kind_(kind), range_(range) {}

Observable Observable::diagonal(LatticeBox box, Eigen::VectorXcd values)
{
    if (values.size() != box.volume())
        throw std::invalid_argument("Observable: value count does not match box volume");
    Observable a(std::move(box), Kind::diagonal, 0);
    a.entries_.emplace(Offset(static_cast<std::size_t>(a.box_.dim()), 0), std::move(values));
    return a;
}

Observable Observable::diagonal(LatticeBox box, const Eigen::VectorXd& values)
{
    return diagonal(std::move(box), Eigen::VectorXcd(values.cast<Complex>()));
}

Observable Observable::constant(LatticeBox box, Complex c)
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(box.volume(), c);
    return diagonal(std::move(box), std::move(v));
}

Observable Observable::kernel(LatticeBox box, int range)
{
    if (range < 0 || range > box.min_side() - 1)
        throw std::invalid_argument("Observable: range must lie in [0, min side - 1]");
    return Observable(std::move(box), Kind::kernel, range);
}

Complex Observable::at(const MultiIndex& x, const Offset& z) const
{
    auto it = entries_.find(z);
    if (it == entries_.end() || !box_.contains(shifted(x, z)))
        return 0.0;
    return it->second[box_.linearize(x)];
}

Complex Observable::entry(const MultiIndex& x, const MultiIndex& y) const
{
    Offset z(y);
    for (std::size_t l = 0; l < z.size(); ++l)
        z[l] -= x[l];
    return at(x, z);
}

void Observable::set(const MultiIndex& x, const Offset& z, Complex value)
{
    if (static_cast<int>(z.size()) != box_.dim())
        throw std::invalid_argument("Observable::set: offset dimension mismatch");
    if (l1_norm(z) > range_)
        throw std::out_of_range("Observable::set: offset exceeds observable range");
    if (!box_.contains(shifted(x, z)))
        throw std::out_of_range("Observable::set: pair leaves the box");
    auto [it, inserted] = entries_.try_emplace(z, Eigen::VectorXcd::Zero(box_.volume()));
    it->second[box_.linearize(x)] = value;
}

Eigen::VectorXcd Observable::diagonal_values() const
{
    auto it = entries_.find(Offset(static_cast<std::size_t>(box_.dim()), 0));
    if (it == entries_.end())
        return Eigen::VectorXcd::Zero(box_.volume());
    return it->second;
}

double Observable::sup_norm() const
{
    double m = 0.0;
    for (const auto& [z, v] : entries_) {
        if (v.size() > 0)
            m = std::max(m, v.cwiseAbs().maxCoeff());
    }
    return m;
}

Wavefunction Observable::apply(const Wavefunction& psi) const
{
    if (!(psi.box == box_))
        throw std::invalid_argument("Observable::apply: box mismatch");
    Wavefunction out(box_);
    for (const auto& [z, v] : entries_) {
        for (Index i = 0; i < box_.volume(); ++i) {
            if (v[i] == Complex(0.0))
                continue;
            MultiIndex y = shifted(box_.delinearize(i), z);
            out.values[i] += v[i] * psi.values[box_.linearize(y)];
        }
    }
    return out;
}

Eigen::MatrixXcd Observable::dense() const
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(box_.volume(), box_.volume());
    for (const auto& [z, v] : entries_) {
        for (Index i = 0; i < box_.volume(); ++i) {
            if (v[i] == Complex(0.0))
                continue;
            m(i, box_.linearize(shifted(box_.delinearize(i), z))) = v[i];
        }
    }
    return m;
}

Complex uniform_average(const Observable& a)
{
    return a.diagonal_values().sum() / static_cast<double>(a.box().volume());
}

Observable centered(const Observable& a)
{
    if (!a.is_diagonal())
        throw std::invalid_argument("centered: observable must be diagonal");
    Eigen::VectorXcd v = a.diagonal_values();
    v.array() -= uniform_average(a);
    return Observable::diagonal(a.box(), std::move(v));
}

Wavefunction translate(const Wavefunction& psi, const Offset& z, BoundaryMode mode)
{
    const LatticeBox& box = psi.box;
    if (static_cast<int>(z.size()) != box.dim())
        throw std::invalid_argument("translate: offset dimension mismatch");
    Wavefunction out(box);
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex y = shifted(box.delinearize(i), z);
        if (box.contains(y))
            out.values[i] = psi.values[box.linearize(y)];
        else if (mode == BoundaryMode::periodic)
            out.values[i] = psi.values[box.linearize(box.wrap(y))];
    }
    return out;
}

Eigen::MatrixXd translation_matrix(const LatticeBox& box, const Offset& z, BoundaryMode mode)
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(box.volume(), box.volume());
    for (Index i = 0; i < box.volume(); ++i) {
        MultiIndex y = shifted(box.delinearize(i), z);
        if (box.contains(y))
            m(i, box.linearize(y)) += 1.0;
        else if (mode == BoundaryMode::periodic)
            m(i, box.linearize(box.wrap(y))) += 1.0;
    }
    return m;
}

Index translation_defect_count(const LatticeBox& box, const Offset& z)
{
    return box.volume() - shift_set(box, z).size();
}

Averages averages(const Observable& a, const Wavefunction& psi)
{
    if (!a.is_diagonal())
        throw std::invalid_argument("averages: observable must be diagonal");
    if (!(a.box() == psi.box))
        throw std::invalid_argument("averages: box mismatch");
    Eigen::VectorXcd diag = a.diagonal_values();
    Complex q = 0.0;
    for (Index i = 0; i < diag.size(); ++i)
        q += diag[i] * std::norm(psi.values[i]);
    return {uniform_average(a), q};
}

} // namespace qe
