// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace vibsim {

// Round-trip-exact decimal rendering of a double ("%.17g").
std::string fmt_g17(double v);

// FNV-1a over bytes; used for config hashes in output headers.
std::uint64_t fnv1a(std::string_view bytes);

// Worker-thread cap: VIBSIM_THREADS if set (clamped to >= 1), otherwise
// std::thread::hardware_concurrency().
int worker_thread_cap();

// Runs fn(0..n-1) on up to worker_thread_cap() threads. Results must be
// written to per-index slots; the partition is deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace vibsim
