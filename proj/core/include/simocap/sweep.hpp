#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace simocap {

// Worker count for grid sweeps: hardware concurrency capped by the
// SIMOCAP_THREADS environment variable (values < 1 mean serial).
std::size_t sweep_thread_count();

// Runs fn(0..n-1), possibly in parallel. Callers index into preallocated
// output slots so completion order never changes results.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Grid argument grammar: a comma list "0.1,0.5,2" or an inclusive range
// "start:stop:step". Empty input yields an empty grid.
std::vector<double> parse_grid(const std::string& spec);
std::vector<std::uint64_t> parse_seed_list(const std::string& spec);

} // namespace simocap
