#pragma once

#include <cstddef>
#include <functional>

namespace ebvp {

// Process-wide worker budget for parallel loops. Set once at startup (the CLI
// maps --threads here); 0 restores the hardware default.
void set_thread_budget(int threads);
int thread_budget();

// Runs fn(i) for i in [0, count) on up to thread_budget() workers. Results must
// be written into preallocated per-index slots; any cross-index reduction the
// caller performs afterwards is then independent of the schedule, which keeps
// outputs byte-identical across thread counts.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ebvp
