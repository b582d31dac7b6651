#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qe {

using Complex = std::complex<double>;
using Index = std::int64_t;

// 1-based site coordinates.
using MultiIndex = std::vector<int>;
// Integer displacement between sites.
using Offset = std::vector<int>;

enum class BoundaryMode { dirichlet, periodic };

BoundaryMode parse_boundary_mode(const std::string& name);
std::string to_string(BoundaryMode mode);

/// Rectangular index box prod_l [[1, sides[l]]] with row-major linear
/// indexing (coordinate 1 varies slowest).
class LatticeBox {
public:
    explicit LatticeBox(std::vector<int> sides);

    /// The cube [[1,n]]^d.
    static LatticeBox cube(int d, int n);

    int dim() const { return static_cast<int>(sides_.size()); }
    int side(int l) const { return sides_[static_cast<std::size_t>(l)]; }
    std::span<const int> sides() const { return sides_; }
    Index volume() const { return volume_; }
    int min_side() const;

    bool contains(const MultiIndex& x) const;
    Index linearize(const MultiIndex& x) const;
    MultiIndex delinearize(Index i) const;

    /// Coordinate-wise wraparound into the box; the result always lies inside.
    MultiIndex wrap(const MultiIndex& x) const;

    bool operator==(const LatticeBox& other) const { return sides_ == other.sides_; }

private:
    std::vector<int> sides_;
    std::vector<Index> strides_;
    Index volume_ = 0;
};

Index linearize(const LatticeBox& box, const MultiIndex& x);
MultiIndex delinearize(const LatticeBox& box, Index i);

int l1_norm(const Offset& z);
MultiIndex shifted(const MultiIndex& x, const Offset& z);
Offset negated(const Offset& z);

/// All offsets with l1 norm at most R, in lexicographic order.
std::vector<Offset> offsets_within(int d, int R);

/// Complex square-summable function on a box.
struct Wavefunction {
    LatticeBox box;
    Eigen::VectorXcd values;

    explicit Wavefunction(LatticeBox b);
    Wavefunction(LatticeBox b, Eigen::VectorXcd v);

    Complex& operator()(const MultiIndex& x) { return values[box.linearize(x)]; }
    Complex operator()(const MultiIndex& x) const { return values[box.linearize(x)]; }

    double norm() const { return values.norm(); }
};

/// <psi, phi>, antilinear in the first slot.
Complex inner(const Wavefunction& psi, const Wavefunction& phi);

/// The set L_z = {x in box : x + z in box}.
struct ShiftSet {
    Offset z;
    std::vector<Index> sites;

    Index size() const { return static_cast<Index>(sites.size()); }
};

ShiftSet shift_set(const LatticeBox& box, const Offset& z);

/// Finite-range observable stored by offset: for every offset z, the
/// vector of K(x, x+z) indexed by the linear index of x. Entries vanish for
/// x outside L_z.
class Observable {
public:
    enum class Kind { diagonal, kernel };

    /// Diagonal observable from per-site values a(x,x).
    static Observable diagonal(LatticeBox box, Eigen::VectorXcd values);
    static Observable diagonal(LatticeBox box, const Eigen::VectorXd& values);
    static Observable constant(LatticeBox box, Complex c);
    /// Empty kernel of range R.
    static Observable kernel(LatticeBox box, int range);

    const LatticeBox& box() const { return box_; }
    Kind kind() const { return kind_; }
    bool is_diagonal() const { return kind_ == Kind::diagonal; }
    int range() const { return range_; }

    /// K(x, x+z); zero when x+z falls outside the box.
    Complex at(const MultiIndex& x, const Offset& z) const;
    Complex entry(const MultiIndex& x, const MultiIndex& y) const;
    void set(const MultiIndex& x, const Offset& z, Complex value);

    /// Diagonal entries a(x,x) in linear order.
    Eigen::VectorXcd diagonal_values() const;

    const std::map<Offset, Eigen::VectorXcd>& by_offset() const { return entries_; }

    double sup_norm() const;
    Wavefunction apply(const Wavefunction& psi) const;
    Eigen::MatrixXcd dense() const;

private:
    Observable(LatticeBox box, Kind kind, int range);

    LatticeBox box_;
    Kind kind_;
    int range_;
    std::map<Offset, Eigen::VectorXcd> entries_;
};

/// a - <a> Id for a diagonal observable.
Observable centered(const Observable& a);

/// rho_z (dirichlet) or tau_z (periodic) applied to psi.
Wavefunction translate(const Wavefunction& psi, const Offset& z, BoundaryMode mode);

/// Dense matrix of rho_z or tau_z on the box.
Eigen::MatrixXd translation_matrix(const LatticeBox& box, const Offset& z, BoundaryMode mode);

/// Exact ||tau_z - rho_z||_HS^2: the number of sites x with x+z outside the
/// box, provided every side exceeds |z_l| so the wrapped target is unique.
Index translation_defect_count(const LatticeBox& box, const Offset& z);

struct Averages {
    Complex uniform_average;
    Complex quadratic_form;
};

Averages averages(const Observable& a, const Wavefunction& psi);

/// (1/volume) sum_x a(x,x).
Complex uniform_average(const Observable& a);

} // namespace qe
