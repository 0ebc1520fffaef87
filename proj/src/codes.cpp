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

#include "omnistbc/codes.hpp"

namespace omnistbc
{

namespace
{

constexpr int kMaxRate = 8;

struct CodeName
{
    CodeKind kind;
    std::string_view name;
};

constexpr CodeName kCodeNames[] = {
    {CodeKind::SingleStream, "single"}, {CodeKind::Alamouti, "ac"},   {CodeKind::Ostbc, "ostbc"},
    {CodeKind::Qostbc, "qostbc"},       {CodeKind::Ciod, "ciod"},     {CodeKind::NzeTc, "nze_tc"},
    {CodeKind::NzeOac, "nze_oac"},
};

bool is_nze(CodeKind kind)
{
    return kind == CodeKind::NzeTc || kind == CodeKind::NzeOac;
}

void check_rate(int R)
{
    if (R < 1 || R > kMaxRate)
        fail(ErrorKind::InvalidArgument, "rate must lie in [1, " + std::to_string(kMaxRate) + "]");
}

void check_bits(std::span<const std::uint8_t> bits, std::size_t expected)
{
    if (bits.size() != expected)
        fail(ErrorKind::Dimension, "expected " + std::to_string(expected) + " payload bits, got " +
                                       std::to_string(bits.size()));
}

void check_nonzero(const CVector &x)
{
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) == 0.0)
            fail(ErrorKind::ConstraintViolation,
                 "symbol " + std::to_string(i) + " has zero amplitude");
}

// Tall (L+N-1) x N no-zero-entry Toeplitz matrix, valid for L >= N-1.
CMatrix nze_tc_tall(const CVector &x, int N)
{
    const auto L = static_cast<int>(x.size());
    const int rows = L + N - 1;
    auto band = [&](int m, int n) -> cplx {
        const int k = m - n;
        return (k >= 0 && k < L) ? x[k] : cplx{};
    };
    CMatrix out(rows, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < rows; ++m)
        {
            if (m < n)
                out(m, n) = band(m + L, n);
            else if (m < n + L)
                out(m, n) = band(m, n);
            else
                out(m, n) = -band(m - L, n);
        }
    return out;
}

// Tall (L+N-1) x N overlapped Alamouti matrix for odd N.
CMatrix nze_oac_tall_odd(const CVector &x, int N)
{
    const auto L = x.size();
    CVector xo = CVector::Zero(L);
    CVector xe = CVector::Zero(L);
    for (Eigen::Index i = 0; i < L; ++i)
        (i % 2 == 0 ? xo : xe)[i] = x[i];

    const CMatrix to = nze_tc_tall(xo, N);
    const CMatrix te = nze_tc_tall(xe, N);
    CMatrix out(to.rows(), N);
    for (int k = 0; k < N; ++k)
    {
        // odd part: conjugate every other column starting with the first
        const auto o = (k % 2 == 0) ? CVector(to.col(k).conjugate()) : CVector(to.col(k));
        // even part: columns reversed, every second one negated and conjugated
        const int src = N - 1 - k;
        const auto e = (k % 2 == 0) ? CVector(te.col(src)) : CVector(-te.col(src).conjugate());
        out.col(k) = o + e;
    }
    return out;
}

void check_nze(const NzeParams &p, CodeKind kind)
{
    if (p.ports < 1)
        fail(ErrorKind::InvalidArgument, "NZE codes need at least one port");
    if (kind == CodeKind::NzeTc && p.symbols < p.ports)
        fail(ErrorKind::InvalidArgument, "NZE-TC needs L >= N");
    if (kind == CodeKind::NzeOac)
    {
        if (p.symbols < 2 || p.symbols % 2 != 0)
            fail(ErrorKind::InvalidArgument, "NZE-OAC needs an even L");
        const int odd_ports = (p.ports % 2 == 1) ? p.ports : p.ports + 1;
        if (p.symbols < odd_ports - 1)
            fail(ErrorKind::InvalidArgument, "NZE-OAC needs L >= N (L >= N-1 for odd N)");
    }
}

Codeword make_codeword(CodeKind kind, CMatrix entries, std::span<const std::uint8_t> bits)
{
    Codeword cw;
    cw.kind = kind;
    cw.entries = std::move(entries);
    cw.payload.assign(bits.begin(), bits.end());
    return cw;
}

} // namespace

std::string_view to_string(CodeKind kind)
{
    for (const auto &c : kCodeNames)
        if (c.kind == kind)
            return c.name;
    return "unknown";
}

CodeKind parse_code_kind(std::string_view name)
{
    for (const auto &c : kCodeNames)
        if (c.name == name)
            return c.kind;
    fail(ErrorKind::InvalidArgument, "unknown code '" + std::string(name) + "'");
}

int CodeSpec::ports() const
{
    switch (kind)
    {
    case CodeKind::SingleStream: return 1;
    case CodeKind::Alamouti: return 2;
    case CodeKind::Ostbc:
    case CodeKind::Qostbc:
    case CodeKind::Ciod: return 4;
    case CodeKind::NzeTc:
    case CodeKind::NzeOac: return nze.ports;
    }
    return 0;
}

int CodeSpec::slots() const
{
    switch (kind)
    {
    case CodeKind::SingleStream: return 1;
    case CodeKind::Alamouti: return 2;
    case CodeKind::Ostbc:
    case CodeKind::Qostbc:
    case CodeKind::Ciod: return 4;
    case CodeKind::NzeTc: return nze.symbols + nze.ports - 1;
    case CodeKind::NzeOac:
        return nze.symbols + nze.ports - ((nze.ports % 2 == 1) ? 1 : 2);
    }
    return 0;
}

int CodeSpec::bits_per_codeword() const
{
    switch (kind)
    {
    case CodeKind::SingleStream: return rate;
    case CodeKind::Alamouti: return 2 * rate;
    case CodeKind::Ostbc:
    case CodeKind::Qostbc:
    case CodeKind::Ciod: return 4 * rate;
    case CodeKind::NzeTc:
    case CodeKind::NzeOac: return nze.symbols * rate;
    }
    return 0;
}

double CodeSpec::bit_rate() const
{
    return static_cast<double>(bits_per_codeword()) / slots();
}

void validate_code_spec(const CodeSpec &spec)
{
    check_rate(spec.rate);
    if (is_nze(spec.kind))
        check_nze(spec.nze, spec.kind);
}

Codeword encode_single(cplx x)
{
    Codeword cw;
    cw.kind = CodeKind::SingleStream;
    cw.entries = CMatrix::Constant(1, 1, x);
    return cw;
}

Codeword encode_ac(cplx x1, cplx x2)
{
    Codeword cw;
    cw.kind = CodeKind::Alamouti;
    cw.entries.resize(2, 2);
    cw.entries << x1, std::conj(x2), x2, -std::conj(x1);
    return cw;
}

CMatrix ostbc_matrix(cplx x1, cplx x2, cplx x3)
{
    const cplx z{};
    CMatrix X(4, 4);
    X << x1, std::conj(x2), std::conj(x3), z,
         x2, -std::conj(x1), z, std::conj(x3),
         x3, z, -std::conj(x1), -std::conj(x2),
         z, x3, -x2, x1;
    return X;
}

CMatrix ostbc_revised_matrix(cplx x1, cplx x2, cplx x3p)
{
    return ostbc_matrix(x1, x2, std::abs(x1 + x2) * x3p);
}

CMatrix qostbc_matrix(cplx x1, cplx x2, cplx x3, cplx x4)
{
    CMatrix X(4, 4);
    X << x1, std::conj(x2), x3, std::conj(x4),
         x2, -std::conj(x1), x4, -std::conj(x3),
         x3, std::conj(x4), x1, std::conj(x2),
         x4, -std::conj(x3), x2, -std::conj(x1);
    return X;
}

CMatrix ciod_matrix(cplx x1, cplx x2, cplx x3, cplx x4)
{
    CMatrix X = CMatrix::Zero(4, 4);
    X(0, 0) = x1;
    X(0, 1) = std::conj(x2);
    X(1, 0) = x2;
    X(1, 1) = -std::conj(x1);
    X(2, 2) = x3;
    X(2, 3) = std::conj(x4);
    X(3, 2) = x4;
    X(3, 3) = -std::conj(x3);
    return X;
}

std::array<cplx, 4> ciod_interleave(cplx s1, cplx s2)
{
    const double r2 = std::sqrt(2.0);
    return {r2 * cplx(1, 1) * s1.real(), r2 * cplx(1, -1) * s2.real(),
            r2 * cplx(1, 1) * s1.imag(), r2 * cplx(-1, 1) * s2.imag()};
}

CMatrix encode_toeplitz(const CVector &x, int N)
{
    const auto L = static_cast<int>(x.size());
    if (L < 1 || N < 1)
        fail(ErrorKind::InvalidArgument, "Toeplitz code needs L >= 1 and N >= 1");
    CMatrix out = CMatrix::Zero(L + N - 1, N);
    for (int n = 0; n < N; ++n)
        out.col(n).segment(n, L) = x;
    return out;
}

CMatrix nze_tc_matrix(const CVector &x, int N)
{
    return nze_tc_tall(x, N).transpose();
}

CMatrix nze_oac_matrix(const CVector &x, int N)
{
    if (N % 2 == 1)
        return nze_oac_tall_odd(x, N).transpose();
    const CMatrix wide = nze_oac_tall_odd(x, N + 1);
    // drop the first column, then the first and last rows
    const CMatrix reduced = wide.block(1, 1, wide.rows() - 2, N);
    return reduced.transpose();
}

Codeword encode_nze_tc(const CVector &x, int N)
{
    check_nze({static_cast<int>(x.size()), N}, CodeKind::NzeTc);
    check_nonzero(x);
    Codeword cw;
    cw.kind = CodeKind::NzeTc;
    cw.entries = nze_tc_matrix(x, N);
    return cw;
}

Codeword encode_nze_oac(const CVector &x, int N)
{
    check_nze({static_cast<int>(x.size()), N}, CodeKind::NzeOac);
    check_nonzero(x);
    Codeword cw;
    cw.kind = CodeKind::NzeOac;
    cw.entries = nze_oac_matrix(x, N);
    return cw;
}

OstbcAlphabets ostbc_alphabets(int R)
{
    check_rate(R);
    return {make_pam(1 << (2 * R - 2)), make_psk(4)};
}

std::pair<Constellation, Constellation> qostbc_alphabets(int R)
{
    check_rate(R);
    const int L = 1 << R;
    return {make_psk(L), make_psk(L, qostbc_rotation(L))};
}

Constellation ciod_alphabet(int R)
{
    check_rate(R);
    return make_rotated_qam(1 << (2 * R), ciod_rotation());
}

Constellation psk_alphabet(const CodeSpec &spec)
{
    check_rate(spec.rate);
    return make_psk(1 << spec.rate);
}

Encoder::Encoder(const CodeSpec &spec) : spec_(spec)
{
    validate_code_spec(spec_);
    switch (spec_.kind)
    {
    case CodeKind::Ostbc: {
        auto a = ostbc_alphabets(spec_.rate);
        alphabets_ = {a.pam, a.qpsk};
        break;
    }
    case CodeKind::Qostbc: {
        auto a = qostbc_alphabets(spec_.rate);
        alphabets_ = {a.first, a.second};
        break;
    }
    case CodeKind::Ciod: alphabets_ = {ciod_alphabet(spec_.rate)}; break;
    default: alphabets_ = {psk_alphabet(spec_)}; break;
    }
}

Codeword Encoder::encode(std::span<const std::uint8_t> bits) const
{
    check_bits(bits, static_cast<std::size_t>(spec_.bits_per_codeword()));
    std::size_t pos = 0;
    auto take = [&](const Constellation &c) {
        const int idx = c.index_of_bits(bits.subspan(pos, static_cast<std::size_t>(c.bit_width())));
        pos += static_cast<std::size_t>(c.bit_width());
        return c.point(idx);
    };

    const Constellation &a0 = alphabets_[0];
    switch (spec_.kind)
    {
    case CodeKind::SingleStream: return make_codeword(spec_.kind, CMatrix::Constant(1, 1, take(a0)), bits);
    case CodeKind::Alamouti: {
        const cplx x1 = take(a0);
        const cplx x2 = take(a0);
        return make_codeword(spec_.kind, encode_ac(x1, x2).entries, bits);
    }
    case CodeKind::Ostbc: {
        const cplx x1 = take(a0);
        const cplx x2 = kJ * take(a0);
        const cplx x3p = take(alphabets_[1]);
        return make_codeword(spec_.kind, ostbc_revised_matrix(x1, x2, x3p), bits);
    }
    case CodeKind::Qostbc: {
        const Constellation &a1 = alphabets_[1];
        const cplx x1 = take(a0);
        const cplx x2 = take(a0);
        const cplx x3 = take(a1);
        const cplx x4 = take(a1);
        return make_codeword(spec_.kind, qostbc_matrix(x1, x2, x3, x4), bits);
    }
    case CodeKind::Ciod: {
        const cplx s1 = take(a0);
        const cplx s2 = take(a0);
        const auto x = ciod_interleave(s1, s2);
        return make_codeword(spec_.kind, ciod_matrix(x[0], x[1], x[2], x[3]), bits);
    }
    case CodeKind::NzeTc:
    case CodeKind::NzeOac: {
        CVector x(spec_.nze.symbols);
        for (Eigen::Index i = 0; i < x.size(); ++i)
            x[i] = take(a0);
        CMatrix X = spec_.kind == CodeKind::NzeTc ? nze_tc_matrix(x, spec_.nze.ports)
                                                  : nze_oac_matrix(x, spec_.nze.ports);
        return make_codeword(spec_.kind, std::move(X), bits);
    }
    }
    fail(ErrorKind::InvalidArgument, "unknown code kind");
}

Codeword encode(const CodeSpec &spec, std::span<const std::uint8_t> bits)
{
    return Encoder(spec).encode(bits);
}

Codeword encode_ostbc(std::span<const std::uint8_t> bits, int R)
{
    return encode(CodeSpec{CodeKind::Ostbc, R, {}}, bits);
}

Codeword encode_qostbc(std::span<const std::uint8_t> bits, int R)
{
    return encode(CodeSpec{CodeKind::Qostbc, R, {}}, bits);
}

Codeword encode_ciod(std::span<const std::uint8_t> bits, int R)
{
    return encode(CodeSpec{CodeKind::Ciod, R, {}}, bits);
}

std::vector<Codeword> enumerate_codebook(const CodeSpec &spec, std::size_t max_codewords)
{
    const Encoder enc(spec);
    const int b = spec.bits_per_codeword();
    if (b >= 63 || (std::uint64_t{1} << b) > max_codewords)
        fail(ErrorKind::CapExceeded, "codebook of 2^" + std::to_string(b) +
                                         " codewords exceeds the cap of " +
                                         std::to_string(max_codewords));
    const std::uint64_t count = std::uint64_t{1} << b;
    std::vector<Codeword> book;
    book.reserve(static_cast<std::size_t>(count));
    Bits bits(static_cast<std::size_t>(b));
    for (std::uint64_t p = 0; p < count; ++p)
    {
        for (int i = 0; i < b; ++i)
            bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((p >> (b - 1 - i)) & 1u);
        book.push_back(enc.encode(bits));
    }
    return book;
}

} // namespace omnistbc
