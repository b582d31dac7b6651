#include "doctest.h"

#include <cmath>

#include "qe/correspondence.hpp"
#include "qe/observables.hpp"

using namespace qe;

namespace {

Wavefunction random_unit(const LatticeBox& box, std::uint64_t seed)
{
    Rng rng(seed);
    Eigen::VectorXcd v(box.volume());
    for (Index i = 0; i < box.volume(); ++i)
        v[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return Wavefunction(box, v / v.norm());
}

} // namespace

TEST_CASE("reflection")
{
    CHECK(reflect({1}, 0, LatticeBox({4})) == MultiIndex{3});
    CHECK(reflect({2, 5}, 1, LatticeBox({6, 6})) == MultiIndex{2, 1});
    const LatticeBox box({6});
    for (int x = 1; x <= 6; ++x)
        CHECK(reflect(reflect({x}, 0, box), 0, box) == MultiIndex{x});
    CHECK_THROWS_AS(reflect({1}, 0, LatticeBox({5})), std::invalid_argument);
    CHECK_THROWS_AS(reflect({1}, 1, LatticeBox({4})), std::out_of_range);
}

TEST_CASE("embedding of small cases")
{
    const Wavefunction one(LatticeBox({1}), Eigen::VectorXcd::Ones(1));
    const Wavefunction e1 = embed(one);
    const double r = 1 / std::sqrt(2.0);
    CHECK(e1.box.side(0) == 4);
    CHECK((e1.values - Eigen::Vector4cd(r, 0, -r, 0)).norm() < 1e-15);

    const Wavefunction s1(LatticeBox({2}), Eigen::Vector2cd(r, r));
    Eigen::VectorXcd expected(6);
    expected << 0.5, 0.5, 0, -0.5, -0.5, 0;
    CHECK((embed(s1).values - expected).norm() < 1e-15);
}

TEST_CASE("embedding preserves norm and is injective")
{
    const LatticeBox box = LatticeBox::cube(2, 3);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Wavefunction psi = random_unit(box, seed);
        const Wavefunction e = embed(psi);
        CHECK(std::abs(e.norm() - 1.0) < 1e-13);
        CHECK((e.values - embed_by_formula(psi).values).norm() == 0.0);
        CHECK((restrict_embedding(e, box).values - psi.values).norm() < 1e-14);
    }
}

TEST_CASE("embedding zeros and antisymmetry")
{
    const LatticeBox box({2, 3});
    const Wavefunction psi = random_unit(box, 9);
    const Wavefunction e = embed(psi);
    const LatticeBox& t = e.box;
    CHECK(t == LatticeBox({6, 8}));
    for (Index i = 0; i < t.volume(); ++i) {
        const MultiIndex y = t.delinearize(i);
        if (y[0] % 3 == 0 || y[1] % 4 == 0)
            CHECK(e.values[i] == Complex(0.0));
        for (int l = 0; l < 2; ++l)
            CHECK(e(reflect(y, l, t)) == -e.values[i]);
    }
}

TEST_CASE("correspondence residuals")
{
    const double r = 1 / std::sqrt(2.0);
    const Wavefunction s1(LatticeBox({2}), Eigen::Vector2cd(r, r));
    CHECK(verify_correspondence(s1, 1.0) <= 1e-12);
    CHECK_THROWS_AS(verify_correspondence(Wavefunction(LatticeBox({2}), Eigen::Vector2cd(1, 1)), 1.0),
                    std::invalid_argument);

    const CorrespondenceCertificate c = certify_dirichlet_basis(4, 2);
    CHECK(c.max_residual <= 1e-10);
    CHECK(c.inclusion_error <= 1e-10);
    const CorrespondenceCertificate c1 = certify_dirichlet_basis(5, 1);
    CHECK(c1.gram_error <= 1e-12);
}

TEST_CASE("block embedding validates periods")
{
    const Wavefunction psi = random_unit(LatticeBox({6}), 1);
    CHECK_THROWS_AS(embed_block(psi, {3}, 2), UnsupportedPeriod);
    CHECK_THROWS_AS(embed_block(psi, {2}, 2), std::invalid_argument);
    CHECK(embed_block(psi, {2}, 3).box == LatticeBox({14}));
}

TEST_CASE("observable extension")
{
    const Observable one = Observable::constant(LatticeBox({3}), 1.0);
    const Observable ext = extend_observable(one);
    CHECK(uniform_average(ext).real() == doctest::Approx(3.0 / 8));
    CHECK((8.0 / 3) * uniform_average(ext).real() == doctest::Approx(uniform_average(one).real()));
    CHECK(extend_observable(Observable::constant(LatticeBox({3}), 0.0)).sup_norm() == 0.0);

    const LatticeBox box = LatticeBox::cube(2, 3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Wavefunction psi = random_unit(box, 100 + seed);
        const Observable a = random_diagonal(box, 200 + seed);
        const Complex lhs = inner(psi, a.apply(psi));
        const Wavefunction e = embed(psi);
        const Complex rhs = 4.0 * inner(e, extend_observable(a).apply(e));
        CHECK(std::abs(lhs - rhs) <= 1e-12);

        const Observable K = random_kernel(box, 2, 300 + seed);
        CHECK(std::abs(inner(psi, K.apply(psi)) - 4.0 * inner(e, extend_observable(K).apply(e))) <= 1e-12);
    }
}

TEST_CASE("periodic basis completion")
{
    const int N = 3;
    const SpectralData s = dirichlet_basis(N, 1);
    std::vector<Wavefunction> family;
    std::vector<double> values;
    for (Index j = 0; j < s.size(); ++j) {
        family.push_back(embed(s.vector(j)));
        values.push_back(s.eigenvalues[j]);
    }
    const SpectralData full = complete_periodic_basis(family, values);
    const Index V = full.box.volume();
    CHECK(V == 8);
    CHECK((full.eigenvectors.adjoint() * full.eigenvectors - Eigen::MatrixXcd::Identity(V, V)).cwiseAbs().maxCoeff() <
          1e-12);
    const Eigen::MatrixXcd A = adjacency_matrix(full.box, BoundaryMode::periodic).cast<Complex>();
    for (Index j = 0; j < V; ++j)
        CHECK((A * full.eigenvectors.col(j) - full.eigenvalues[j] * full.eigenvectors.col(j)).norm() < 1e-12);
    // every family member appears verbatim
    for (const auto& f : family) {
        bool found = false;
        for (Index j = 0; j < V; ++j)
            found = found || (full.eigenvectors.col(j) - f.values).norm() == 0.0;
        CHECK(found);
    }
}
