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
#include "omnistbc/rng.hpp"

// Receivers for y_t = sum_n g_n X_{n,t} + z_t. Here g is the row vector
// h^H W stored as a column, i.e. the conjugate of effective_channel().

namespace omnistbc
{

struct RxObservation
{
    CVector y;            // T received samples
    CVector g;            // h^H W, one coefficient per port
    double sigma_n2 = 0.0;
};

struct Decision
{
    Bits bits;
    std::vector<cplx> symbols;
    long evaluations = 0; // candidate metric evaluations
};

/// Noiseless y_t = sum_n g_n X_{n,t}.
CVector receive(const CMatrix &X, const CVector &g);

CVector add_awgn(const CVector &clean, double sigma_n2, Rng &rng);

Decision ml_decode_single(const RxObservation &obs, const Constellation &c);
Decision ml_decode_ac(const RxObservation &obs, const Constellation &c);
Decision ml_decode_ostbc(const RxObservation &obs, int R);
Decision ml_decode_qostbc(const RxObservation &obs, int R);
Decision ml_decode_ciod(const RxObservation &obs, int R);
Decision zf_decode_nze(const RxObservation &obs, const CodeSpec &spec);

/// Zero-forcing receiver for one NZE code. The real-linear basis of the code
/// is built once; decode() solves the 2T x 2L real least-squares system.
class ZfDecoder
{
public:
    explicit ZfDecoder(const CodeSpec &spec);
    Decision decode(const RxObservation &obs) const;

private:
    CodeSpec spec_;
    Constellation psk_;
    std::vector<CMatrix> re_basis_; // X(e_i)
    std::vector<CMatrix> im_basis_; // X(j e_i)
};

/// The decoder paired with each code, alphabets prepared once.
class Decoder
{
public:
    explicit Decoder(const CodeSpec &spec);
    const CodeSpec &spec() const noexcept { return spec_; }
    Decision decode(const RxObservation &obs) const;

private:
    CodeSpec spec_;
    std::vector<Constellation> alphabets_;
    std::optional<ZfDecoder> zf_;
};

} // namespace omnistbc
