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

// Zadoff-Chu sequences, the unitary DFT and CAZAC predicates.

namespace omnistbc
{

inline constexpr double kAmplitudeTol = 1e-9;

struct ZcSequence
{
    int length = 0;
    int root = 0;
    CVector values; // unit energy, every element of magnitude 1/sqrt(length)
};

/// Root-`gamma` Zadoff-Chu sequence of length `M`, normalised to unit energy.
/// The phase of every element is evaluated from its closed-form exponent,
/// reduced modulo 2M in integer arithmetic.
/// Throws ErrorKind::InvalidRoot unless 1 <= gamma < M and gcd(gamma, M) == 1.
ZcSequence zc_generate(int M, int gamma);

/// Energy preserving forward DFT, X_k = M^{-1/2} sum_m x_m e^{-j 2 pi k m / M}.
CVector unitary_dft(const CVector &v);
CVector unitary_idft(const CVector &v);

/// max|v| - min|v| <= tol * max|v|. An all-zero vector is not constant amplitude.
bool is_constant_amplitude(const CVector &v, double tol = kAmplitudeTol);

/// Constant amplitude in both the time and the DFT domain.
bool is_cazac(const CVector &v, double tol = kAmplitudeTol);

/// v^H P_n v, where P_n is the cyclic shift (P_n v)_i = v_{(i - n) mod M}.
cplx periodic_autocorr(const CVector &v, int shift);

/// diag(c) (1_{M/N} kron x). Requires M to be a multiple of N^2.
CVector lift(const ZcSequence &c, const CVector &x);

} // namespace omnistbc
