// Copyright 2026 The FANoS Bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "fanos/vector_ops.hpp"

namespace fanos {

// Only the raw engines from <random> are used. The standard distributions
// are implementation-defined, so every conversion to floating point is
// spelled out here to keep draws identical across standard libraries.

/// SplitMix64 finalizer; mixes a 64-bit key into a well-spread seed.
std::uint64_t splitmix64(std::uint64_t x);

/// 64-bit FNV-1a of a string.
std::uint64_t fnv1a(std::string_view text);

/// Stream key for a named purpose: splitmix of (fnv1a(name) ^ mixed parts).
std::uint64_t stream_key(std::string_view purpose, std::uint64_t a,
                         std::uint64_t b = 0);

/// Initial point with entries in [lo, hi). Draws 32-bit words from
/// std::mt19937 seeded with `seed` and keeps the low 24 bits as a float,
/// which reproduces torch.manual_seed(seed); torch.empty(d).uniform_(lo, hi)
/// on CPU. Values are widened to double after the float computation.
Vector uniform_initial_point(std::size_t dim, std::uint32_t seed, float lo,
                             float hi);

/// Double in [0, 1) from the top 53 bits of a 64-bit word.
inline double unit_double(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Standard normals via Box-Muller on mt19937_64 output.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Unbiased integer in [0, n) by rejection on the raw engine output.
std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n);

}  // namespace fanos
