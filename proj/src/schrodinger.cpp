#include "qe/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qe/correspondence.hpp"
#include "qe/time_average.hpp"

namespace qe {

PeriodicPotential::PeriodicPotential(std::vector<int> q, std::vector<double> v)
    : periods(std::move(q)), values(std::move(v))
{
    if (periods.empty())
        throw std::invalid_argument("PeriodicPotential: at least one period required");
    std::size_t cell = 1;
    for (int p : periods) {
        if (p < 1)
            throw std::invalid_argument("PeriodicPotential: periods must be positive");
        cell *= static_cast<std::size_t>(p);
    }
    if (values.size() != cell)
        throw std::invalid_argument("PeriodicPotential: expected one value per site of the fundamental block");
}

PeriodicPotential PeriodicPotential::zero(int d)
{
    return PeriodicPotential(std::vector<int>(static_cast<std::size_t>(d), 1), {0.0});
}

PeriodicPotential PeriodicPotential::alternating(double M) { return PeriodicPotential({2}, {0.0, M}); }

PeriodicPotential PeriodicPotential::from_json(const nlohmann::json& j)
{
    const int d = j.at("d").get<int>();
    auto q = j.at("q").get<std::vector<int>>();
    auto values = j.at("values").get<std::vector<double>>();
    if (static_cast<int>(q.size()) != d)
        throw std::invalid_argument("PeriodicPotential: 'q' must have d entries");
    return PeriodicPotential(std::move(q), std::move(values));
}

PeriodicPotential PeriodicPotential::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open potential file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed potential file '" + path + "': " + e.what());
    }
    return from_json(j);
}

nlohmann::json PeriodicPotential::to_json() const
{
    return {{"d", dim()}, {"q", periods}, {"values", values}};
}

double PeriodicPotential::operator()(const MultiIndex& x) const
{
    return values[static_cast<std::size_t>(cell().linearize(cell().wrap(x)))];
}

LatticeBox truncation_box(const std::vector<int>& periods, int N)
{
    if (N < 1)
        throw std::invalid_argument("truncation_box: N must be at least 1");
    std::vector<int> sides;
    for (int q : periods)
        sides.push_back(q * N);
    return LatticeBox(std::move(sides));
}

Eigen::MatrixXd TruncatedOperator::dense() const
{
    Eigen::MatrixXd H = adjacency_matrix(box, mode);
    for (Index i = 0; i < box.volume(); ++i)
        H(i, i) += potential(box.delinearize(i));
    return H;
}

Wavefunction TruncatedOperator::apply(const Wavefunction& psi) const
{
    Wavefunction out = apply_adjacency(psi, mode);
    for (Index i = 0; i < box.volume(); ++i)
        out.values[i] += potential(box.delinearize(i)) * psi.values[i];
    return out;
}

TruncatedOperator build_operator(const PeriodicPotential& V, int N, BoundaryMode mode)
{
    return {truncation_box(V.periods, N), V, mode};
}

TruncatedOperator build_operator_on(const PeriodicPotential& V, LatticeBox box, BoundaryMode mode)
{
    if (box.dim() != V.dim())
        throw std::invalid_argument("build_operator_on: dimension mismatch");
    return {std::move(box), V, mode};
}

SpectralData schrodinger_basis(const TruncatedOperator& H, std::optional<double> tol)
{
    const EigenSolveResult r = eigensolve_symmetric(H.dense());
    SpectralData data{H.box, r.eigenvalues, r.eigenvectors.cast<Complex>(), {}, {}};
    data.classes = degeneracy_classes(data.eigenvalues, tol.value_or(default_degeneracy_tolerance(H.box.dim())));
    return data;
}

MassProfile counterexample_mass_profile(double M, int N)
{
    if (!(M > 4.0))
        throw std::invalid_argument("counterexample_mass_profile: bands overlap unless M > 4");
    const TruncatedOperator H = build_operator(PeriodicPotential::alternating(M), N, BoundaryMode::dirichlet);
    const EigenSolveResult r = eigensolve_symmetric(H.dense());

    MassProfile profile;
    profile.bound = 4.0 / ((M - 2.0) * (M - 2.0));
    profile.eigen_residual = r.residual;
    for (Index j = 0; j < r.eigenvalues.size(); ++j) {
        const double lambda = r.eigenvalues[j];
        double even = 0.0, odd = 0.0;
        for (Index i = 0; i < r.eigenvectors.rows(); ++i) {
            const double w = r.eigenvectors(i, j) * r.eigenvectors(i, j);
            // linear index i is site x = i + 1
            if ((i + 1) % 2 == 0)
                even += w;
            else
                odd += w;
        }
        if (lambda >= -2.0 && lambda <= 2.0) {
            ++profile.low_band_count;
            profile.low_even_mass.push_back(even);
            profile.max_low_even_mass = std::max(profile.max_low_even_mass, even);
        } else if (lambda >= M - 2.0 && lambda <= M + 2.0) {
            ++profile.high_band_count;
            profile.high_odd_mass.push_back(odd);
            profile.max_high_odd_mass = std::max(profile.max_high_odd_mass, odd);
        }
    }
    return profile;
}

bool satisfies_block_condition(const Observable& a, const std::vector<int>& periods, int N, double tol)
{
    if (!a.is_diagonal())
        throw std::invalid_argument("satisfies_block_condition: observable must be diagonal");
    const LatticeBox box = truncation_box(periods, N);
    if (!(a.box() == box))
        throw std::invalid_argument("satisfies_block_condition: observable must live on Lambda_N");
    const LatticeBox cell(periods);
    const LatticeBox translates = LatticeBox::cube(static_cast<int>(periods.size()), N);
    const Eigen::VectorXcd diag = a.diagonal_values();

    std::vector<Complex> sums;
    for (Index c = 0; c < cell.volume(); ++c) {
        const MultiIndex x = cell.delinearize(c);
        Complex s = 0.0;
        for (Index t = 0; t < translates.volume(); ++t) {
            MultiIndex n = translates.delinearize(t);
            MultiIndex y(x);
            for (std::size_t l = 0; l < y.size(); ++l)
                y[l] += (n[l] - 1) * periods[l];
            s += diag[box.linearize(y)];
        }
        sums.push_back(s);
    }
    for (const Complex& s : sums) {
        if (std::abs(s - sums.front()) > tol)
            return false;
    }
    return true;
}

PartialQeResult partial_qe_experiment(const PeriodicPotential& V, int N, const Observable& a,
                                      const PartialQeOptions& options)
{
    for (int q : V.periods) {
        if (q > 2 && !options.allow_long_periods)
            throw UnsupportedPeriod("partial_qe_experiment: periods beyond 2 need exploratory mode");
    }
    if (!a.is_diagonal())
        throw std::invalid_argument("partial_qe_experiment: observable must be diagonal");
    if (a.sup_norm() > 1.0 + 1e-12)
        throw std::invalid_argument("partial_qe_experiment: observable sup norm exceeds 1");

    PartialQeResult result;
    result.block_condition = satisfies_block_condition(a, V.periods, N);
    if (options.check_block_condition && !result.block_condition)
        throw std::invalid_argument(
            "partial_qe_experiment: observable violates the block-sum condition (run unchecked to exhibit failure)");

    const TruncatedOperator H = build_operator(V, N, BoundaryMode::dirichlet);
    const EigenSolveResult r = eigensolve_symmetric(H.dense());
    SpectralData basis{H.box, r.eigenvalues, r.eigenvectors.cast<Complex>(), {}, {}};
    result.eigen_residual = r.residual;
    result.variance = quantum_variance(basis, centered(a));
    return result;
}

BoundaryPerturbation boundary_perturbation_rank(const PeriodicPotential& V, int N)
{
    const Eigen::MatrixXd D = build_operator(V, N, BoundaryMode::periodic).dense() -
                              build_operator(V, N, BoundaryMode::dirichlet).dense();
    BoundaryPerturbation out;
    for (Index i = 0; i < D.rows(); ++i) {
        if (D.row(i).cwiseAbs().maxCoeff() > 0.0)
            ++out.nonzero_rows;
    }
    const EigenSolveResult r = eigensolve_symmetric(D);
    for (Index j = 0; j < r.eigenvalues.size(); ++j) {
        if (std::abs(r.eigenvalues[j]) > 1e-9)
            ++out.rank;
    }
    return out;
}

double verify_block_correspondence(const PeriodicPotential& V, int N)
{
    const TruncatedOperator H = build_operator(V, N, BoundaryMode::dirichlet);
    const EigenSolveResult r = eigensolve_symmetric(H.dense());
    const TruncatedOperator omega = build_operator_on(V, embedding_box(H.box), BoundaryMode::periodic);
    double worst = 0.0;
    for (Index j = 0; j < r.eigenvalues.size(); ++j) {
        const Wavefunction psi(H.box, r.eigenvectors.col(j).cast<Complex>());
        const Wavefunction e = embed_block(psi, V.periods, N);
        worst = std::max(worst, (omega.apply(e).values - r.eigenvalues[j] * e.values).norm());
    }
    return worst;
}

} // namespace qe
