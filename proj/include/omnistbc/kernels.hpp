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

#include "omnistbc/common.hpp"

// Data-parallel kernels. Each has a serial reference and an OpenMP version
// that must agree with it; tests and bench/ compare the two.

namespace omnistbc::kernels
{

enum class Exec
{
    Serial,
    Parallel,
};

struct PairScan
{
    std::uint64_t pairs = 0;      // unordered pairs visited
    double min_det = 0.0;         // min det(dX dX^H)
    std::uint64_t min_i = 0, min_j = 0;
    bool rank_deficient = false;
    std::uint64_t bad_i = 0, bad_j = 0; // lowest rank-deficient pair
    double inv_det_sum = 0.0;     // sum over unordered pairs of 1 / det(dX dX^H)
};

/// Visits every unordered pair of equally sized codewords.
PairScan scan_pairs(const std::vector<CMatrix> &codebook, Exec exec);

/// det(A A^H) for an N x T matrix. Fixed-size paths for N <= 4.
double gram_det(const CMatrix &A);

} // namespace omnistbc::kernels
