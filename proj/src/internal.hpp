// Copyright 2026 The ttclock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <vector>

#include "ttclock/potential.hpp"

namespace ttclock::detail {

// (psi, psi') over a constant-potential segment: [[c, sn], [-qs, c]], det 1.
struct SegmentPropagator {
  double c = 1.0;
  double sn = 0.0;
  double qs = 0.0;
};

// s = 2m(E - V)/hbar^2
SegmentPropagator segment_propagator(double s, double h);

std::vector<double> slice_wavenumbers(const BarrierSpec& barrier, double k, double spin_shift,
                                      int slices);

}  // namespace ttclock::detail

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace ttclock::detail {

inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TTCLOCK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) hw = static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return hw;
}

// Runs fn(i) for i in [0, n); results are written by index so ordering is deterministic.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace ttclock::detail
