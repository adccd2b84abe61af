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

#ifndef WEAKSUP_RANDOM_H_
#define WEAKSUP_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace weaksup {

// Mixes a sequence of integers into one seed (splitmix64 finalizer chain).
// Used to derive independent streams from (master seed, setting, run, ...).
uint64_t DeriveSeed(std::initializer_list<uint64_t> parts);
uint64_t DeriveSeed(std::span<const uint64_t> parts);

// Seeded generator whose outputs are fully specified by the seed. The
// standard distributions are implementation-defined, so the bounded and
// real-valued draws below are computed directly from the engine output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  size_t UniformIndex(size_t n);

  // Uniform double in [0, 1).
  double Uniform01() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace weaksup

#endif  // WEAKSUP_RANDOM_H_
