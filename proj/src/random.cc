// Copyright 2026 The Weaksup Authors.
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

#include "weaksup/random.h"

#include <limits>
#include <stdexcept>

namespace weaksup {
namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t DeriveSeed(std::initializer_list<uint64_t> parts) {
  return DeriveSeed(std::span<const uint64_t>(parts.begin(), parts.size()));
}

uint64_t DeriveSeed(std::span<const uint64_t> parts) {
  uint64_t state = 0x6a09e667f3bcc908ULL;
  for (uint64_t part : parts) state = SplitMix64(state ^ SplitMix64(part));
  return state;
}

size_t Rng::UniformIndex(size_t n) {
  if (n == 0) throw std::invalid_argument("UniformIndex: empty range");
  const uint64_t bound = static_cast<uint64_t>(n);
  // Rejection sampling removes modulo bias.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return static_cast<size_t>(x % bound);
}

}  // namespace weaksup
