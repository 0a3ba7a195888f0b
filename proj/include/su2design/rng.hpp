// Copyright 2026 The su2design Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SU2DESIGN_RNG_HPP
#define SU2DESIGN_RNG_HPP

#include <cstdint>
#include <span>

namespace su2design {

/// Deterministic random stream (xoshiro256** seeded through splitmix64).
///
/// The standard-library distributions are implementation defined, which would
/// make seeded outputs differ between toolchains. Everything random in this
/// project (uniforms, normals, Poisson counts) goes through this class so that
/// a seed pins the output bytes on every platform.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Standard normal deviate (polar Marsaglia method).
    double normal();

    /// Poisson-distributed count with the given mean.
    ///
    /// Exact sampling: Knuth multiplication for small means, additivity
    /// Poisson(a+b) = Poisson(a) + Poisson(b) to split large ones. Cost is
    /// O(mean) uniforms, which is fine at this project's budgets.
    std::int64_t poisson(double mean);

    /// Categorical draw over unnormalized nonnegative weights; returns index.
    std::size_t categorical(std::span<const double> weights);

  private:
    std::int64_t knuth(double mean);

    std::uint64_t s_[4];
    bool have_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// Derives independent substreams from one root seed by stable indexing, so
/// per-(setting, element) work is reproducible regardless of evaluation order.
class StreamFactory {
  public:
    explicit StreamFactory(std::uint64_t root_seed) : root_(root_seed) {}

    std::uint64_t root_seed() const { return root_; }

    RandomStream stream(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const;

  private:
    std::uint64_t root_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace su2design

#endif
