#pragma once

#include <cstddef>
#include <functional>

namespace qe {

/// Worker count: QE_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Callers write results into slot i, so the
/// outcome does not depend on scheduling. The exception from the lowest
/// failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace qe
