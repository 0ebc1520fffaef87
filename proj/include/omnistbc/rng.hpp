// SPDX-License-Identifier: Apache-2.0
//
// omnistbc - omnidirectional space-time block codes for massive MIMO broadcast
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <bit>
#include <random>

#include "omnistbc/common.hpp"

namespace omnistbc
{

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for one Monte Carlo trial, a pure function of its coordinates.
inline std::uint64_t trial_seed(std::uint64_t master_seed, double snr_db, double theta0,
                                std::uint64_t trial_index)
{
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(snr_db));
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(theta0));
    return splitmix64(h ^ trial_index);
}

/// Circularly symmetric complex Gaussian with E|z|^2 = 1.
inline cplx complex_normal(Rng &rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

} // namespace omnistbc
