#pragma once

#include <cstddef>
#include <functional>

namespace gbap {

// Worker count used by every internal parallel loop. Results never depend on
// it: work is split into a fixed number of blocks and reduced in block order.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for every i in [0, count). The first exception (lowest index)
// is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace gbap
