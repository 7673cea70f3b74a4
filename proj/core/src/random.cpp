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

#include "fanos/random.hpp"

#include <cmath>
#include <numbers>

namespace fanos {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t stream_key(std::string_view purpose, std::uint64_t a,
                         std::uint64_t b) {
  return splitmix64(fnv1a(purpose) ^ splitmix64(a ^ splitmix64(b)));
}

Vector uniform_initial_point(std::size_t dim, std::uint32_t seed, float lo,
                             float hi) {
  std::mt19937 engine(seed);
  Vector x(dim);
  const float width = hi - lo;
  for (auto& xi : x) {
    const std::uint32_t word = static_cast<std::uint32_t>(engine());
    const float u =
        static_cast<float>(word & ((1u << 24) - 1)) * std::ldexp(1.0f, -24);
    xi = static_cast<double>(u * width + lo);
  }
  return x;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - unit_double(engine_());
  const double u2 = unit_double(engine_());
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n) {
  // Reject the tail above the largest multiple of n.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t word;
  do {
    word = engine();
  } while (word >= limit);
  return word % n;
}

}  // namespace fanos
