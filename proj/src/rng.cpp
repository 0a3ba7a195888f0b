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

#include "su2design/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace su2design {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
        word = splitmix64(sm);
    }
}

std::uint64_t RandomStream::next_u64() {
    // xoshiro256** by Blackman and Vigna (public domain reference code).
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) {
        throw std::invalid_argument("uniform_int: empty range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection to remove modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

double RandomStream::normal() {
    if (have_spare_normal_) {
        have_spare_normal_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    have_spare_normal_ = true;
    return u * f;
}

std::int64_t RandomStream::poisson(double mean) {
    if (!(mean >= 0.0)) {
        throw std::invalid_argument("poisson: mean must be nonnegative");
    }
    if (mean == 0.0) {
        return 0;
    }
    std::int64_t total = 0;
    double remaining = mean;
    constexpr double chunk = 30.0;
    while (remaining > chunk) {
        total += knuth(chunk);
        remaining -= chunk;
    }
    return total + knuth(remaining);
}

std::int64_t RandomStream::knuth(double mean) {
    const double threshold = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform();
    } while (p > threshold);
    return k - 1;
}

std::size_t RandomStream::categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw std::invalid_argument("categorical: negative weight");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("categorical: all weights zero");
    }
    const double r = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc) {
            return i;
        }
    }
    return weights.size() - 1;
}

RandomStream StreamFactory::stream(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    std::uint64_t sm = root_;
    std::uint64_t h = splitmix64(sm);
    sm = h ^ (a + 0x51'7c'c1'b7'27'22'0a'95ULL);
    h = splitmix64(sm);
    sm = h ^ (b + 0x9e'37'79'b9'7f'4a'7c'15ULL);
    h = splitmix64(sm);
    sm = h ^ c;
    return RandomStream(splitmix64(sm));
}

}  // namespace su2design
