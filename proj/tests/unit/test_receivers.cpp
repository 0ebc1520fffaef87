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

#include <doctest.h>

#include "omnistbc/receivers.hpp"
#include "oracle.hpp"

using namespace omnistbc;

namespace
{

CodeSpec spec_of(CodeKind kind, int rate, int L = 0, int N = 0)
{
    CodeSpec s;
    s.kind = kind;
    s.rate = rate;
    s.nze = {L, N};
    return s;
}

RxObservation observe(const Codeword &cw, const CVector &g, double s2, Rng &rng)
{
    RxObservation obs;
    obs.g = g;
    obs.sigma_n2 = s2;
    obs.y = add_awgn(receive(cw.entries, g), s2, rng);
    return obs;
}

void check_noiseless_round_trip(const CodeSpec &s, int channels)
{
    const Decoder dec(s);
    Rng rng(42);
    int wrong = 0;
    for (int c = 0; c < channels; ++c)
    {
        const CVector g = oracle::random_channel(s.ports(), rng);
        for (const auto &cw : enumerate_codebook(s))
            wrong += dec.decode(observe(cw, g, 0.0, rng)).bits != cw.payload;
    }
    INFO(to_string(s.kind), " R=", s.rate);
    CHECK(wrong == 0);
}

void check_against_exhaustive(const CodeSpec &s, double s2, int trials)
{
    const Decoder dec(s);
    const auto book = enumerate_codebook(s);
    Rng rng(7);
    int mismatches = 0;
    int errors = 0;
    for (int t = 0; t < trials; ++t)
    {
        const CVector g = oracle::random_channel(s.ports(), rng);
        const auto &cw = book[rng() % book.size()];
        const auto obs = observe(cw, g, s2, rng);
        const Bits got = dec.decode(obs).bits;
        mismatches += got != book[oracle::exhaustive_ml(book, obs)].payload;
        errors += got != cw.payload;
    }
    INFO(to_string(s.kind), " R=", s.rate);
    CHECK(mismatches == 0);
    // the noise level must be high enough for the comparison to mean something
    CHECK(errors > trials / 50);
}

} // namespace

TEST_SUITE("receivers")
{

TEST_CASE("add_awgn")
{
    Rng rng(3);
    const CVector clean = CVector::Constant(5, cplx(1, 2));
    CHECK(add_awgn(clean, 0.0, rng) == clean);

    const int n = 100000;
    const CVector z = add_awgn(CVector::Zero(n), 0.3, rng);
    CHECK(z.squaredNorm() / n == doctest::Approx(0.3).epsilon(0.03));
    CHECK(z.real().squaredNorm() / n == doctest::Approx(0.15).epsilon(0.03));
    CHECK(z.imag().squaredNorm() / n == doctest::Approx(0.15).epsilon(0.03));
    CHECK_THROWS_AS(add_awgn(clean, -1.0, rng), Error);
}

TEST_CASE("receive forms X^T g")
{
    const CMatrix X = encode_ac(1.0, kJ).entries;
    const CVector g = (CVector(2) << cplx(0.5, 1), cplx(-2, 0.1)).finished();
    const CVector y = receive(X, g);
    CHECK(std::abs(y[0] - (g[0] * X(0, 0) + g[1] * X(1, 0))) < 1e-15);
    CHECK(std::abs(y[1] - (g[0] * X(0, 1) + g[1] * X(1, 1))) < 1e-15);
}

TEST_CASE("Alamouti with a single active port slices y1")
{
    const auto c = make_psk(4);
    RxObservation obs;
    obs.g = (CVector(2) << 1.0, 0.0).finished();
    obs.y = (CVector(2) << cplx(0.1, 0.9), cplx(-1, 0)).finished();
    const auto d = ml_decode_ac(obs, c);
    CHECK(d.symbols[0] == kJ);
}

TEST_CASE("noiseless observations decode to the payload")
{
    for (int R : {1, 2, 3})
    {
        check_noiseless_round_trip(spec_of(CodeKind::SingleStream, R), 20);
        check_noiseless_round_trip(spec_of(CodeKind::Alamouti, R), 100);
    }
    for (int R : {1, 2})
    {
        check_noiseless_round_trip(spec_of(CodeKind::Ostbc, R), 50);
        check_noiseless_round_trip(spec_of(CodeKind::Qostbc, R), 50);
        check_noiseless_round_trip(spec_of(CodeKind::Ciod, R), 50);
    }
    check_noiseless_round_trip(spec_of(CodeKind::NzeTc, 2, 4, 2), 50);
    check_noiseless_round_trip(spec_of(CodeKind::NzeOac, 2, 4, 3), 50);
    check_noiseless_round_trip(spec_of(CodeKind::NzeOac, 1, 4, 4), 50);
    check_noiseless_round_trip(spec_of(CodeKind::NzeTc, 1, 12, 4), 20);
}

TEST_CASE("fast decoders agree with exhaustive search on noisy inputs")
{
    check_against_exhaustive(spec_of(CodeKind::SingleStream, 2), 0.3, 1000);
    check_against_exhaustive(spec_of(CodeKind::Alamouti, 1), 0.5, 1000);
    check_against_exhaustive(spec_of(CodeKind::Alamouti, 2), 0.3, 1000);
    check_against_exhaustive(spec_of(CodeKind::Ostbc, 1), 2.0, 1000);
    check_against_exhaustive(spec_of(CodeKind::Ostbc, 2), 0.3, 1000);
    check_against_exhaustive(spec_of(CodeKind::Qostbc, 1), 2.0, 1000);
    check_against_exhaustive(spec_of(CodeKind::Qostbc, 2), 1.0, 1000);
    check_against_exhaustive(spec_of(CodeKind::Ciod, 1), 2.0, 1000);
    check_against_exhaustive(spec_of(CodeKind::Ciod, 2), 0.4, 1000);
}

TEST_CASE("candidate evaluation counts")
{
    Rng rng(1);
    const CVector g = oracle::random_channel(4, rng);
    const Bits b8(8, 0);
    const Bits b4(4, 0);
    CHECK(ml_decode_ostbc(observe(encode_ostbc(b8, 2), g, 0.0, rng), 2).evaluations == 68);
    CHECK(ml_decode_ostbc(observe(encode_ostbc(b4, 1), g, 0.0, rng), 1).evaluations == 8);
    CHECK(ml_decode_qostbc(observe(encode_qostbc(b4, 1), g, 0.0, rng), 1).evaluations == 8);
    CHECK(ml_decode_qostbc(observe(encode_qostbc(b8, 2), g, 0.0, rng), 2).evaluations == 32);
    for (int R : {1, 2, 3})
    {
        const Bits b(static_cast<std::size_t>(4 * R), 1);
        CHECK(ml_decode_ciod(observe(encode_ciod(b, R), g, 0.0, rng), R).evaluations == (2L << (2 * R)));
        CHECK(ml_decode_qostbc(observe(encode_qostbc(b, R), g, 0.0, rng), R).evaluations == (2L << (2 * R)));
    }
}

TEST_CASE("decisions are invariant to a common phase rotation")
{
    Rng rng(13);
    for (const auto &s : {spec_of(CodeKind::Alamouti, 2), spec_of(CodeKind::Ostbc, 1), spec_of(CodeKind::Qostbc, 2),
                          spec_of(CodeKind::Ciod, 1), spec_of(CodeKind::NzeOac, 1, 4, 3)})
    {
        const Decoder dec(s);
        const auto book = enumerate_codebook(s);
        int diff = 0;
        for (int t = 0; t < 300; ++t)
        {
            auto obs = observe(book[rng() % book.size()], oracle::random_channel(s.ports(), rng), 0.4, rng);
            const Bits a = dec.decode(obs).bits;
            const cplx r = std::polar(1.0, 0.1 + 0.02 * t);
            obs.y *= r;
            obs.g *= r;
            diff += dec.decode(obs).bits != a;
        }
        INFO(to_string(s.kind));
        CHECK(diff == 0);
    }
}

TEST_CASE("zero-forcing decisions do not depend on the channel scale")
{
    Rng rng(21);
    const auto s = spec_of(CodeKind::NzeTc, 2, 4, 2);
    const ZfDecoder zf(s);
    const auto book = enumerate_codebook(s);
    int diff = 0;
    for (int t = 0; t < 200; ++t)
    {
        auto obs = observe(book[rng() % book.size()], oracle::random_channel(2, rng), 0.3, rng);
        const Bits a = zf.decode(obs).bits;
        const cplx k{-1.7, 0.4};
        obs.y *= k;
        obs.g *= k;
        diff += zf.decode(obs).bits != a;
    }
    CHECK(diff == 0);
}

TEST_CASE("ties resolve to the lowest index")
{
    const auto c = make_psk(2);
    RxObservation obs;
    obs.g = CVector::Ones(1);
    obs.y = (CVector(1) << cplx(0, 1)).finished();
    CHECK(ml_decode_single(obs, c).bits == Bits{0});
}

TEST_CASE("a zero channel cannot be decoded")
{
    RxObservation obs;
    obs.y = CVector::Ones(4);
    obs.g = CVector::Zero(4);
    for (const auto &s : {spec_of(CodeKind::Ostbc, 1), spec_of(CodeKind::Qostbc, 1), spec_of(CodeKind::Ciod, 1)})
        CHECK_THROWS_AS(Decoder(s).decode(obs), Error);
    obs.g = CVector::Zero(2);
    obs.y = CVector::Ones(2);
    CHECK_THROWS_AS(Decoder(spec_of(CodeKind::Alamouti, 1)).decode(obs), Error);
    obs.y = CVector::Ones(5);
    try
    {
        Decoder(spec_of(CodeKind::NzeTc, 1, 4, 2)).decode(obs);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK((e.kind() == ErrorKind::RankDeficient || e.kind() == ErrorKind::Undecodable));
    }
}

}
