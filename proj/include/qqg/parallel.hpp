#pragma once

#include <cstddef>
#include <functional>

namespace qqg {

/// Worker count from QQG_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();
/// Overrides the environment for the rest of the process; 0 restores auto.
void set_worker_count(unsigned n);

/// Runs body(i) for i in [0, n). Iterations must write disjoint outputs;
/// results then do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qqg
