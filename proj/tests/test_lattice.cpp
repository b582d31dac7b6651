#include "doctest.h"

#include <cmath>

#include "qe/lattice.hpp"
#include "qe/observables.hpp"

using namespace qe;

TEST_CASE("row-major linear indexing")
{
    const LatticeBox box({3, 3});
    CHECK(box.linearize({1, 1}) == 0);
    CHECK(box.linearize({1, 2}) == 1);
    CHECK(box.linearize({2, 1}) == 3);
    CHECK(box.volume() == 9);

    const LatticeBox rect({4, 5});
    for (Index i = 0; i < rect.volume(); ++i)
        CHECK(rect.linearize(rect.delinearize(i)) == i);
    for (int x = 1; x <= 4; ++x)
        for (int y = 1; y <= 5; ++y)
            CHECK(rect.delinearize(rect.linearize({x, y})) == MultiIndex{x, y});
}

TEST_CASE("out-of-box indices are rejected")
{
    const LatticeBox box({3, 3});
    CHECK_THROWS_AS(box.linearize({0, 1}), std::out_of_range);
    CHECK_THROWS_AS(box.linearize({1, 4}), std::out_of_range);
    CHECK_THROWS_AS(box.delinearize(9), std::out_of_range);
    CHECK_THROWS_AS(box.delinearize(-1), std::out_of_range);
    CHECK_THROWS_AS(LatticeBox({}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeBox({2, 0}), std::invalid_argument);
}

TEST_CASE("boundary mode names")
{
    CHECK(parse_boundary_mode("dirichlet") == BoundaryMode::dirichlet);
    CHECK(parse_boundary_mode("periodic") == BoundaryMode::periodic);
    CHECK(to_string(BoundaryMode::periodic) == "periodic");
    CHECK_THROWS_AS(parse_boundary_mode("open"), std::invalid_argument);
}

TEST_CASE("translate in both modes")
{
    const LatticeBox box({3});
    const Wavefunction psi(box, Eigen::Vector3cd(1, 2, 3));
    const Wavefunction d = translate(psi, {1}, BoundaryMode::dirichlet);
    const Wavefunction p = translate(psi, {1}, BoundaryMode::periodic);
    CHECK(d.values == Eigen::Vector3cd(2, 3, 0));
    CHECK(p.values == Eigen::Vector3cd(2, 3, 1));
    for (auto mode : {BoundaryMode::dirichlet, BoundaryMode::periodic})
        CHECK(translate(psi, {0}, mode).values == psi.values);
}

TEST_CASE("translation adjoints")
{
    const LatticeBox box({4, 3});
    Rng rng(7);
    Eigen::VectorXcd u(box.volume()), v(box.volume());
    for (Index i = 0; i < box.volume(); ++i) {
        u[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        v[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    const Wavefunction psi(box, u), phi(box, v);
    for (const Offset& z : offsets_within(2, 2)) {
        for (auto mode : {BoundaryMode::dirichlet, BoundaryMode::periodic}) {
            const Complex lhs = inner(psi, translate(phi, z, mode));
            const Complex rhs = inner(translate(psi, negated(z), mode), phi);
            CHECK(std::abs(lhs - rhs) < 1e-13);
        }
    }
}

TEST_CASE("periodic minus dirichlet translation has one entry per boundary site")
{
    for (int N : {4, 6, 9}) {
        const LatticeBox box = LatticeBox::cube(2, N);
        for (const Offset& z : offsets_within(2, 3)) {
            const Eigen::MatrixXd diff = translation_matrix(box, z, BoundaryMode::periodic) -
                                         translation_matrix(box, z, BoundaryMode::dirichlet);
            CHECK(diff.squaredNorm() == doctest::Approx(static_cast<double>(translation_defect_count(box, z))));
            // at most |z_1| N + |z_2| N sites, O(N^{d-1})
            CHECK(translation_defect_count(box, z) <= (std::abs(z[0]) + std::abs(z[1])) * N);
        }
    }
}

TEST_CASE("dirichlet translation composes to the identity away from the boundary")
{
    const LatticeBox box({6});
    const Wavefunction psi(box, Eigen::VectorXcd::LinSpaced(6, 1.0, 6.0));
    const Wavefunction back = translate(translate(psi, {-2}, BoundaryMode::dirichlet), {2}, BoundaryMode::dirichlet);
    for (int x = 1; x <= 4; ++x)
        CHECK(back({x}) == psi({x}));
}

TEST_CASE("shift sets")
{
    const LatticeBox box({3, 4});
    CHECK(shift_set(box, {0, 0}).size() == box.volume());
    for (const Offset& z : offsets_within(2, 2))
        CHECK(shift_set(box, z).size() == shift_set(box, negated(z)).size());
    CHECK(shift_set(box, {1, 0}).size() == 8);
    CHECK(shift_set(box, {3, 0}).size() == 0);
}

TEST_CASE("offsets_within enumerates the l1 ball")
{
    CHECK(offsets_within(1, 2).size() == 5);
    CHECK(offsets_within(2, 1).size() == 5);
    CHECK(offsets_within(2, 2).size() == 13);
    CHECK(offsets_within(3, 1).size() == 7);
}

TEST_CASE("averages")
{
    const LatticeBox box({2});
    const Observable a = Observable::diagonal(box, Eigen::VectorXd(Eigen::Vector2d(1.0, 0.0)));
    const Wavefunction psi(box, Eigen::Vector2cd(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)));
    const Averages r = averages(a, psi);
    CHECK(r.quadratic_form.real() == doctest::Approx(0.5));
    CHECK(r.uniform_average.real() == doctest::Approx(0.5));

    const LatticeBox cube = LatticeBox::cube(2, 3);
    CHECK(uniform_average(Observable::constant(cube, 2.5)).real() == doctest::Approx(2.5));
    const Averages zero = averages(Observable::constant(box, 0.0), psi);
    CHECK(zero.uniform_average == Complex(0.0));
    CHECK(zero.quadratic_form == Complex(0.0));
    CHECK_THROWS_AS(averages(a, Wavefunction(LatticeBox({3}))), std::invalid_argument);
}

TEST_CASE("kernel observables")
{
    const LatticeBox box({3});
    Observable K = Observable::kernel(box, 1);
    K.set({1}, {1}, 2.0);
    CHECK(K.entry({1}, {2}) == Complex(2.0));
    CHECK(K.at({1}, {1}) == Complex(2.0));
    CHECK(K.at({3}, {1}) == Complex(0.0));
    CHECK_THROWS(K.set({3}, {1}, 1.0));
    CHECK_THROWS(K.set({1}, {2}, 1.0));
    CHECK_THROWS_AS(Observable::kernel(box, 3), std::invalid_argument);

    const Wavefunction e2(box, Eigen::Vector3cd(0, 1, 0));
    CHECK(K.apply(e2).values == Eigen::Vector3cd(2, 0, 0));
    CHECK(K.dense()(0, 1) == Complex(2.0));
    CHECK(K.sup_norm() == 2.0);
}

TEST_CASE("builtin observables")
{
    const LatticeBox box({4});
    CHECK(half_indicator(box).diagonal_values().real() == Eigen::Vector4d(1, 1, 0, 0));
    CHECK(parity(box).diagonal_values().real() == Eigen::Vector4d(0, 1, 0, 1));
    CHECK(single_site(box).diagonal_values().real() == Eigen::Vector4d(1, 0, 0, 0));
    CHECK(block_constant({2}, 4).diagonal_values().real() ==
          (Eigen::VectorXd(8) << 1, 1, 1, 1, 0, 0, 0, 0).finished());
    const Observable r1 = random_diagonal(box, 3), r2 = random_diagonal(box, 3);
    CHECK(r1.diagonal_values() == r2.diagonal_values());
    CHECK(r1.sup_norm() <= 1.0);
    CHECK_THROWS_AS(make_builtin_observable("unknown", {1}, 4, 0), std::invalid_argument);
}

TEST_CASE("seeded generator is reproducible and in range")
{
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}
