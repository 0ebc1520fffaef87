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

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "omnistbc/constellation.hpp"

// Low-dimensional space-time block codes. Every codeword is stored as an
// N x T matrix: rows are virtual ports, columns are time slots.

namespace omnistbc
{

enum class CodeKind
{
    SingleStream,
    Alamouti,
    Ostbc,
    Qostbc,
    Ciod,
    NzeTc,
    NzeOac,
};

std::string_view to_string(CodeKind kind);
CodeKind parse_code_kind(std::string_view name);

struct NzeParams
{
    int symbols = 0; // L
    int ports = 0;   // N
};

/// A code together with its bit rate. `rate` is bits per channel use for the
/// PSK/PAM/QAM designs and log2 of the PSK order for the NZE codes.
struct CodeSpec
{
    CodeKind kind = CodeKind::Alamouti;
    int rate = 1;
    NzeParams nze{};

    int ports() const;
    int slots() const;
    int bits_per_codeword() const;
    /// bits_per_codeword() / slots()
    double bit_rate() const;
};

struct Codeword
{
    CodeKind kind = CodeKind::Alamouti;
    CMatrix entries;
    Bits payload;

    Eigen::Index ports() const { return entries.rows(); }
    Eigen::Index slots() const { return entries.cols(); }
};

Codeword encode_single(cplx x);
Codeword encode_ac(cplx x1, cplx x2);
Codeword encode_ostbc(std::span<const std::uint8_t> bits, int R);
Codeword encode_qostbc(std::span<const std::uint8_t> bits, int R);
Codeword encode_ciod(std::span<const std::uint8_t> bits, int R);

/// Banded Toeplitz matrix, (L+N-1) x N, entry (m, n) = x_{m-n} for 0 <= m-n < L.
CMatrix encode_toeplitz(const CVector &x, int N);

/// No-zero-entry Toeplitz code on PSK symbols. Requires L >= N.
Codeword encode_nze_tc(const CVector &x, int N);
/// No-zero-entry overlapped Alamouti code on PSK symbols. Requires even L.
Codeword encode_nze_oac(const CVector &x, int N);

/// Raw rate-3/4 OSTBC, x3 free.
CMatrix ostbc_matrix(cplx x1, cplx x2, cplx x3);
/// OSTBC with x3 = |x1 + x2| x3p.
CMatrix ostbc_revised_matrix(cplx x1, cplx x2, cplx x3p);
CMatrix qostbc_matrix(cplx x1, cplx x2, cplx x3, cplx x4);
CMatrix ciod_matrix(cplx x1, cplx x2, cplx x3, cplx x4);
/// x1..x4 from the two rotated-QAM symbols.
std::array<cplx, 4> ciod_interleave(cplx s1, cplx s2);

/// NZE matrices in N x T orientation for arbitrary complex symbols. Both are
/// real-linear in x, which the zero-forcing receiver relies on.
CMatrix nze_tc_matrix(const CVector &x, int N);
CMatrix nze_oac_matrix(const CVector &x, int N);

/// Alphabets used by each design at bit rate R.
struct OstbcAlphabets
{
    Constellation pam; // x1 (x2 is j times the same set)
    Constellation qpsk; // x3'
};
OstbcAlphabets ostbc_alphabets(int R);
/// Returns {S, e^{j Theta} S}: x1, x2 from S and x3, x4 from the rotated copy,
/// so that each jointly decoded pair (x1, x3) and (x2, x4) spans both sets.
std::pair<Constellation, Constellation> qostbc_alphabets(int R);
Constellation ciod_alphabet(int R);
/// PSK alphabet for single-stream, Alamouti and NZE codes.
Constellation psk_alphabet(const CodeSpec &spec);

/// Encoder with the alphabets of one CodeSpec prepared once.
class Encoder
{
public:
    explicit Encoder(const CodeSpec &spec);

    const CodeSpec &spec() const noexcept { return spec_; }
    /// Encode spec().bits_per_codeword() payload bits.
    Codeword encode(std::span<const std::uint8_t> bits) const;

private:
    CodeSpec spec_;
    std::vector<Constellation> alphabets_;
};

Codeword encode(const CodeSpec &spec, std::span<const std::uint8_t> bits);

/// Every codeword of the code, in payload order (payload i carries the bits of i, MSB first).
std::vector<Codeword> enumerate_codebook(const CodeSpec &spec, std::size_t max_codewords = 1u << 16);

/// Checks the spec is internally consistent (rate range, NZE sizes, ...).
void validate_code_spec(const CodeSpec &spec);

} // namespace omnistbc
