#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qe/lattice.hpp"

namespace qe {

/// mt19937_64 with a fixed bit-level mapping to doubles, so seeded streams
/// are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

/// Indicator of x_1 <= side_1 / 2.
Observable half_indicator(const LatticeBox& box);
/// Indicator of one site, (1,...,1) unless given.
Observable single_site(const LatticeBox& box, MultiIndex site = {});
/// Indicator of sites with even coordinate sum.
Observable parity(const LatticeBox& box);
/// Indicator of the translates of the fundamental block whose block index
/// along coordinate 1 is at most N/2, on Lambda_N = prod [[1, q_l N]].
Observable block_constant(const std::vector<int>& periods, int N);
/// Diagonal values uniform on [-1,1].
Observable random_diagonal(const LatticeBox& box, std::uint64_t seed);
/// Kernel of range R with real and imaginary parts uniform on [-1,1].
Observable random_kernel(const LatticeBox& box, int R, std::uint64_t seed);

const std::vector<std::string>& builtin_observable_names();

/// Builtin observable by name on Lambda_N for the given periods (all ones
/// for the plain cube). Throws std::invalid_argument for unknown names.
Observable make_builtin_observable(const std::string& name, const std::vector<int>& periods, int N,
                                   std::uint64_t seed);

} // namespace qe
