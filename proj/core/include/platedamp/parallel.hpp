#pragma once

#include <cstddef>
#include <functional>

namespace platedamp {

/// Worker count used by parallel_for. Defaults to 1; values < 1 reset to 1.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once, so
/// bodies that write only to slot i produce the same result for every
/// thread count. The exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace platedamp
