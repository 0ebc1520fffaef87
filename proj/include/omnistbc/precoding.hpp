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

#include "omnistbc/codes.hpp"
#include "omnistbc/seq.hpp"

// Channel-independent precoders W = diag(c) (1_{M/N} kron V) and the checks
// that a transmitted block radiates omnidirectionally at constant per-antenna
// power.

namespace omnistbc
{

struct Precoder
{
    int M = 0;
    int N = 0;
    int gamma = 0; // 0 when built from an arbitrary sequence
    CMatrix V;     // N x N unitary
    CMatrix W;     // M x N
};

/// W_{m,n} = c_m V_{m mod N, n} with c the root-gamma Zadoff-Chu sequence.
/// Throws Dimension unless M is a multiple of N^2, InvalidArgument unless V is unitary.
Precoder build_precoder(int M, int N, int gamma, const CMatrix &V);

/// Same structure with an arbitrary unit-energy phase sequence in place of c.
Precoder build_precoder_from_sequence(const CVector &c, const CMatrix &V);

/// Unit-energy +-1/sqrt(M) sequence from a PRBS9 generator (x^9 + x^5 + 1, all-ones seed).
CVector prbs_sequence(int M);

/// The unitary V paired with each code.
CMatrix preset_V(const CodeSpec &spec);

/// 2x2 unitary Hadamard matrix.
CMatrix hadamard2();

/// W X, an M x T antenna-domain block.
CMatrix transmit(const Precoder &p, const CMatrix &X);
inline CMatrix transmit(const Precoder &p, const Codeword &X) { return transmit(p, X.entries); }

struct RequirementCheck
{
    bool omni = false;        // every column of F_M S is constant amplitude
    bool per_antenna = false; // every column of S is constant amplitude
};

RequirementCheck check_requirements(const CMatrix &S, double tol = kAmplitudeTol);

/// x^H W^H F^H diag(lambda) F W x. Requires lambda >= 0 with sum M.
double avg_receive_power(const Precoder &p, const CVector &x, const RVector &lambda);

} // namespace omnistbc
