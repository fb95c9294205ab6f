#pragma once

#include <cstddef>
#include <functional>

namespace wdmsim {

/// Runs fn(0..count-1) across up to n_threads workers. Each index must write
/// only to its own output slot; under that contract results are identical
/// for any thread count. Exceptions propagate (first one wins).
void parallel_for(std::size_t count, int n_threads, const std::function<void(std::size_t)>& fn);

} // namespace wdmsim
