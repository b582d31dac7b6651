#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qe/eigensolver.hpp"
#include "qe/observables.hpp"

using namespace qe;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed)
{
    Rng rng(seed);
    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            H(i, j) = H(j, i) = rng.uniform(-1, 1);
    return H;
}

} // namespace

TEST_CASE("two by two")
{
    Eigen::Matrix2d H;
    H << 0, 1, 1, 0;
    const EigenSolveResult r = eigensolve_symmetric(H);
    CHECK(r.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(r.eigenvectors(0, 0) > 0.0);
    CHECK(r.eigenvectors(0, 1) > 0.0);
}

TEST_CASE("diagonal input")
{
    const Eigen::MatrixXd H = Eigen::Vector4d(3, -1, 2, 0).asDiagonal();
    const EigenSolveResult r = eigensolve_symmetric(H);
    CHECK(r.eigenvalues == Eigen::Vector4d(-1, 0, 2, 3));
    const int expected_row[] = {1, 3, 2, 0};
    for (int j = 0; j < 4; ++j)
        CHECK(r.eigenvectors(expected_row[j], j) == doctest::Approx(1.0));
}

TEST_CASE("random symmetric matrices")
{
    for (int n : {1, 2, 7, 50}) {
        const Eigen::MatrixXd H = random_symmetric(n, 1000 + n);
        const EigenSolveResult r = eigensolve_symmetric(H);
        CHECK(r.residual <= 1e-10 * H.norm());
        CHECK(r.gram_error <= 1e-10);
        CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(H);
        CHECK((r.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, H.norm()));
        for (int j = 0; j < n; ++j) {
            int first = 0;
            while (std::abs(r.eigenvectors(first, j)) <= 1e-8)
                ++first;
            CHECK(r.eigenvectors(first, j) > 0.0);
        }
    }
}

TEST_CASE("free chain spectrum")
{
    const int N = 200;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i + 1 < N; ++i)
        A(i, i + 1) = A(i + 1, i) = 1.0;
    const EigenSolveResult r = eigensolve_symmetric(A);
    for (int j = 1; j <= N; ++j)
        CHECK(std::abs(r.eigenvalues[N - j] - 2 * std::cos(j * std::numbers::pi / (N + 1))) <= 1e-10);
}

TEST_CASE("deterministic output")
{
    const Eigen::MatrixXd H = random_symmetric(30, 5);
    const EigenSolveResult a = eigensolve_symmetric(H), b = eigensolve_symmetric(H);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("input validation")
{
    Eigen::Matrix2d H;
    H << 0, 1, 2, 0;
    CHECK_THROWS_AS(eigensolve_symmetric(H), std::invalid_argument);
    CHECK_THROWS_AS(eigensolve_symmetric(Eigen::MatrixXd(2, 3)), std::invalid_argument);

    EigenSolveOptions tight;
    tight.max_sweeps = 0;
    CHECK_THROWS_AS(eigensolve_symmetric(random_symmetric(10, 3), tight), std::runtime_error);
}
