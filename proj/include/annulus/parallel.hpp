#pragma once
#include <cstddef>
#include <functional>

namespace annulus {

// Global worker count: defaults to ANNULUS_LAB_THREADS (if set) or 1; the CLI
// --threads flag overrides.  Results never depend on this value: work items
// write to disjoint slots and reductions run in fixed index order afterwards.
int thread_count();
void set_thread_count(int n);

// Runs fn(i) for i in [0, count) on up to thread_count() threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace annulus
