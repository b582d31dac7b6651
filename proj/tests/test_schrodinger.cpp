#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qe/correspondence.hpp"
#include "qe/observables.hpp"
#include "qe/schrodinger.hpp"
#include "qe/time_average.hpp"

using namespace qe;

TEST_CASE("potential construction and periodic extension")
{
    const PeriodicPotential V({2, 1}, {1.0, 2.0});
    CHECK(V({1, 5}) == 1.0);
    CHECK(V({2, 5}) == 2.0);
    CHECK(V({3, 1}) == 1.0);
    CHECK(V({0, 0}) == 2.0);
    CHECK(V({-1, 0}) == 1.0);
    CHECK_THROWS_AS(PeriodicPotential({2}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicPotential({0}, {}), std::invalid_argument);

    const PeriodicPotential W = PeriodicPotential::from_json(V.to_json());
    CHECK(W.periods == V.periods);
    CHECK(W.values == V.values);
    CHECK_THROWS(PeriodicPotential::from_json({{"d", 2}, {"q", {2}}, {"values", {1.0, 2.0}}}));
}

TEST_CASE("potential files")
{
    const auto path = std::filesystem::temp_directory_path() / "qe_potential_test.json";
    {
        std::ofstream out(path);
        out << R"({"d": 1, "q": [2], "values": [0, 7]})";
    }
    const PeriodicPotential V = PeriodicPotential::load(path.string());
    CHECK(V.values == std::vector<double>{0.0, 7.0});
    std::filesystem::remove(path);
    CHECK_THROWS_AS(PeriodicPotential::load("/nonexistent/qe.json"), std::invalid_argument);
}

TEST_CASE("truncated operators")
{
    const Eigen::MatrixXd H0 = build_operator(PeriodicPotential::zero(1), 3, BoundaryMode::dirichlet).dense();
    Eigen::Matrix3d expected;
    expected << 0, 1, 0, 1, 0, 1, 0, 1, 0;
    CHECK(H0 == expected);

    const double M = 5.0;
    const Eigen::MatrixXd H = build_operator(PeriodicPotential({2}, {M, 0.0}), 2, BoundaryMode::dirichlet).dense();
    CHECK(H.diagonal() == Eigen::Vector4d(M, 0, M, 0));

    const double c = 0.75;
    const TruncatedOperator shifted = build_operator(PeriodicPotential({1, 1}, {c}), 4, BoundaryMode::dirichlet);
    const SpectralData free = dirichlet_basis(4, 2);
    const SpectralData sb = schrodinger_basis(shifted);
    CHECK((sb.eigenvalues - (free.eigenvalues.array() + c).matrix()).cwiseAbs().maxCoeff() < 1e-12);

    const TruncatedOperator P = build_operator(PeriodicPotential({2}, {1.0, -1.0}), 3, BoundaryMode::periodic);
    Wavefunction psi(P.box, Eigen::VectorXcd::LinSpaced(6, 1.0, 6.0));
    CHECK((P.apply(psi).values - P.dense().cast<Complex>() * psi.values).norm() < 1e-14);
}

TEST_CASE("zero potential reproduces the sine spectrum")
{
    const int N = 200;
    const SpectralData b = schrodinger_basis(build_operator(PeriodicPotential::zero(1), N, BoundaryMode::dirichlet));
    for (int j = 1; j <= N; ++j)
        CHECK(std::abs(b.eigenvalues[N - j] - 2 * std::cos(j * std::numbers::pi / (N + 1))) <= 1e-10);
}

TEST_CASE("eigenvalues lie within the potential range widened by 2d")
{
    const PeriodicPotential V({2, 2}, {0.0, 3.0, -1.0, 5.0});
    const SpectralData b = schrodinger_basis(build_operator(V, 4, BoundaryMode::dirichlet));
    CHECK(b.eigenvalues.minCoeff() >= -1.0 - 4.0);
    CHECK(b.eigenvalues.maxCoeff() <= 5.0 + 4.0);
}

TEST_CASE("counterexample band structure")
{
    const MassProfile p = counterexample_mass_profile(100.0, 50);
    CHECK(p.low_band_count == 50);
    CHECK(p.high_band_count == 50);
    CHECK(p.bound == doctest::Approx(4.0 / (98.0 * 98.0)));
    CHECK(p.max_low_even_mass <= p.bound);
    CHECK(p.max_high_odd_mass <= p.bound);
    CHECK(p.passed(50));
    for (double M : {10.0, 100.0})
        for (int N : {10, 50, 200}) {
            const MassProfile q = counterexample_mass_profile(M, N);
            CHECK(q.passed(N));
        }
    CHECK_THROWS_AS(counterexample_mass_profile(4.0, 10), std::invalid_argument);
}

TEST_CASE("block-sum condition")
{
    CHECK(satisfies_block_condition(block_constant({2}, 8), {2}, 8));
    CHECK_FALSE(satisfies_block_condition(parity(LatticeBox({16})), {2}, 8));
    CHECK(satisfies_block_condition(half_indicator(LatticeBox({8})), {1}, 8));
}

TEST_CASE("partial quantum ergodicity experiment")
{
    // zero potential with unit period reduces to the free variance
    const Observable a = random_diagonal(LatticeBox::cube(1, 9), 4);
    const PartialQeResult free = partial_qe_experiment(PeriodicPotential::zero(1), 9, a);
    CHECK(free.variance == doctest::Approx(quantum_variance(dirichlet_basis(9, 1), centered(a))).epsilon(1e-10));

    const PeriodicPotential V = PeriodicPotential::alternating(100.0);
    double previous = 1.0;
    for (int N : {8, 16, 32, 64}) {
        const PartialQeResult r = partial_qe_experiment(V, N, block_constant({2}, N));
        CHECK(r.block_condition);
        CHECK(r.variance < previous);
        previous = r.variance;
    }

    CHECK_THROWS_AS(partial_qe_experiment(V, 8, parity(LatticeBox({16}))), std::invalid_argument);
    PartialQeOptions unchecked;
    unchecked.check_block_condition = false;
    for (int N : {8, 16, 32, 64})
        CHECK(partial_qe_experiment(V, N, parity(LatticeBox({2 * N})), unchecked).variance >= 0.2);

    const PeriodicPotential V3({3}, {0.0, 1.0, 2.0});
    CHECK_THROWS_AS(partial_qe_experiment(V3, 4, block_constant({3}, 4)), UnsupportedPeriod);
    PartialQeOptions exploratory;
    exploratory.allow_long_periods = true;
    CHECK(partial_qe_experiment(V3, 4, block_constant({3}, 4), exploratory).variance >= 0.0);

    const Observable big = Observable::constant(LatticeBox({16}), 2.0);
    CHECK_THROWS_AS(partial_qe_experiment(V, 8, big), std::invalid_argument);
}

TEST_CASE("boundary perturbation rank")
{
    for (int N : {3, 5, 8}) {
        const BoundaryPerturbation p1 = boundary_perturbation_rank(PeriodicPotential::alternating(10.0), N);
        CHECK(p1.rank == 2);
        CHECK(p1.rank <= p1.nonzero_rows);
        const BoundaryPerturbation p2 = boundary_perturbation_rank(PeriodicPotential({1, 1}, {0.0}), N);
        CHECK(p2.rank <= p2.nonzero_rows);
        CHECK(p2.nonzero_rows <= 4 * N);
    }
}

TEST_CASE("block correspondence for periods one and two")
{
    CHECK(verify_block_correspondence(PeriodicPotential::alternating(7.0), 5) <= 1e-10);
    CHECK(verify_block_correspondence(PeriodicPotential({2, 1}, {0.5, -1.0}), 3) <= 1e-10);
    CHECK_THROWS_AS(verify_block_correspondence(PeriodicPotential({3}, {0.0, 1.0, 2.0}), 3), UnsupportedPeriod);
}
