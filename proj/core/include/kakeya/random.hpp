/*
 * Copyright 2026 The kakeya-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstdint>

namespace kakeya {

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Sub-seed for stream `index` of a master seed. Stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// xoshiro256** seeded through SplitMix64. All randomized reports record the
/// seed they were built from; the bit stream is identical on every platform
/// (no std::*_distribution is involved).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;
  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Independent generator for a numbered sub-stream.
  Rng split(std::uint64_t stream) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace kakeya
