#include "qe/observables.hpp"

#include <stdexcept>

namespace qe {

Observable half_indicator(const LatticeBox& box)
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(box.volume());
    const int half = box.side(0) / 2;
    for (Index i = 0; i < box.volume(); ++i)
        if (box.delinearize(i)[0] <= half)
            v[i] = 1.0;
    return Observable::diagonal(box, v);
}

Observable single_site(const LatticeBox& box, MultiIndex site)
{
    if (site.empty())
        site.assign(static_cast<std::size_t>(box.dim()), 1);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(box.volume());
    v[box.linearize(site)] = 1.0;
    return Observable::diagonal(box, v);
}

Observable parity(const LatticeBox& box)
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(box.volume());
    for (Index i = 0; i < box.volume(); ++i) {
        int s = 0;
        for (int c : box.delinearize(i))
            s += c;
        if (s % 2 == 0)
            v[i] = 1.0;
    }
    return Observable::diagonal(box, v);
}

Observable block_constant(const std::vector<int>& periods, int N)
{
    std::vector<int> sides;
    for (int q : periods)
        sides.push_back(q * N);
    const LatticeBox box(std::move(sides));
    Eigen::VectorXd v = Eigen::VectorXd::Zero(box.volume());
    for (Index i = 0; i < box.volume(); ++i) {
        const int block = (box.delinearize(i)[0] - 1) / periods[0] + 1;
        if (block <= N / 2)
            v[i] = 1.0;
    }
    return Observable::diagonal(box, v);
}

Observable random_diagonal(const LatticeBox& box, std::uint64_t seed)
{
    Rng rng(seed);
    Eigen::VectorXd v(box.volume());
    for (Index i = 0; i < box.volume(); ++i)
        v[i] = rng.uniform(-1.0, 1.0);
    return Observable::diagonal(box, v);
}

Observable random_kernel(const LatticeBox& box, int R, std::uint64_t seed)
{
    Rng rng(seed);
    Observable K = Observable::kernel(box, R);
    for (const Offset& z : offsets_within(box.dim(), R)) {
        for (Index i : shift_set(box, z).sites) {
            const double re = rng.uniform(-1.0, 1.0);
            const double im = rng.uniform(-1.0, 1.0);
            K.set(box.delinearize(i), z, Complex(re, im));
        }
    }
    return K;
}

const std::vector<std::string>& builtin_observable_names()
{
    static const std::vector<std::string> names{"half-indicator", "single-site", "parity", "block-constant",
                                                "random-diagonal"};
    return names;
}

Observable make_builtin_observable(const std::string& name, const std::vector<int>& periods, int N,
                                   std::uint64_t seed)
{
    std::vector<int> sides;
    for (int q : periods)
        sides.push_back(q * N);
    const LatticeBox box(std::move(sides));
    if (name == "half-indicator")
        return half_indicator(box);
    if (name == "single-site")
        return single_site(box);
    if (name == "parity")
        return parity(box);
    if (name == "block-constant")
        return block_constant(periods, N);
    if (name == "random-diagonal")
        return random_diagonal(box, seed);
    throw std::invalid_argument("unknown observable '" + name + "'");
}

} // namespace qe
