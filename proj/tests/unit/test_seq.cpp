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

#include <numeric>

#include "omnistbc/seq.hpp"
#include "oracle.hpp"

using namespace omnistbc;

TEST_SUITE("seq")
{

TEST_CASE("zc_generate matches hand-evaluated sequences")
{
    const auto z4 = zc_generate(4, 1);
    const CVector e4 = 0.5 * (CVector(4) << 1.0, std::polar(1.0, kPi / 4), -1.0, std::polar(1.0, kPi / 4)).finished();
    CHECK((z4.values - e4).norm() < 1e-12);

    const auto z3 = zc_generate(3, 1);
    const CVector e3 =
        (CVector(3) << 1.0, std::polar(1.0, 2 * kPi / 3), 1.0).finished() / std::sqrt(3.0);
    CHECK((z3.values - e3).norm() < 1e-12);
}

TEST_CASE("zc_generate rejects bad roots")
{
    CHECK_THROWS_AS(zc_generate(4, 2), Error);
    CHECK_THROWS_AS(zc_generate(8, 0), Error);
    CHECK_THROWS_AS(zc_generate(8, 8), Error);
    try
    {
        zc_generate(4, 2);
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::InvalidRoot);
    }
}

TEST_CASE("every valid root gives a CAZAC sequence with delta autocorrelation")
{
    for (int M : {3, 4, 8, 9, 16, 64, 128})
        for (int g = 1; g < M; ++g)
        {
            if (std::gcd(g, M) != 1)
                continue;
            const auto zc = zc_generate(M, g);
            CHECK(zc.values.cwiseAbs().maxCoeff() - 1.0 / std::sqrt(M) < 1e-12);
            CHECK(is_cazac(zc.values, 1e-9));
            const CVector F = unitary_dft(zc.values);
            CHECK((F.cwiseAbs().array() - 1.0 / std::sqrt(M)).abs().maxCoeff() < 1e-10);
            CHECK(std::abs(periodic_autocorr(zc.values, 0) - 1.0) < 1e-12);
            for (int n = 1; n < M; ++n)
                CHECK(std::abs(periodic_autocorr(zc.values, n)) < 1e-10);
        }
}

TEST_CASE("unitary_dft agrees with the direct sum and preserves energy")
{
    CHECK((unitary_dft((CVector(4) << 1, 0, 0, 0).finished()) - CVector::Constant(4, 0.5)).norm() < 1e-12);
    CHECK((unitary_dft(CVector::Ones(4)) - (CVector(4) << 2, 0, 0, 0).finished()).norm() < 1e-12);
    CHECK((unitary_dft(zc_generate(4, 1).values).cwiseAbs().array() - 0.5).abs().maxCoeff() < 1e-12);

    Rng rng(3);
    for (int M : {1, 5, 16, 37, 128})
    {
        CVector v(M);
        for (auto &x : v)
            x = complex_normal(rng);
        const CVector F = unitary_dft(v);
        CHECK((F - oracle::direct_dft(v)).norm() < 1e-10);
        CHECK(std::abs(F.squaredNorm() - v.squaredNorm()) < 1e-12 * v.squaredNorm() * M);
        CHECK((unitary_idft(F) - v).norm() < 1e-12 * std::sqrt(M));
    }
    CHECK_THROWS_AS(unitary_dft(CVector()), Error);
}

TEST_CASE("amplitude predicates")
{
    CHECK(is_constant_amplitude((CVector(3) << 1.0, kJ, -1.0).finished()));
    CHECK_FALSE(is_constant_amplitude((CVector(2) << 1.0, 0.0).finished()));
    CHECK_FALSE(is_constant_amplitude(CVector::Zero(3)));
    CHECK(is_constant_amplitude(zc_generate(16, 1).values));
    CHECK_THROWS_AS(is_constant_amplitude(CVector()), Error);
    CHECK_THROWS_AS(is_constant_amplitude(CVector::Ones(2), 0.0), Error);

    CHECK(is_cazac(zc_generate(16, 1).values));
    CHECK_FALSE(is_cazac((CVector(4) << 1, 0, 0, 0).finished()));
    CHECK_FALSE(is_cazac(CVector::Ones(4)));
}

TEST_CASE("periodic_autocorr")
{
    const auto zc = zc_generate(8, 3);
    CHECK(std::abs(periodic_autocorr(zc.values, 0) - 1.0) < 1e-12);
    CHECK(std::abs(periodic_autocorr(zc.values, 3)) < 1e-10);
    CHECK(std::abs(periodic_autocorr(CVector::Constant(4, 0.5), 1) - 1.0) < 1e-12);
    CHECK_THROWS_AS(periodic_autocorr(zc.values, 8), Error);
    CHECK_THROWS_AS(periodic_autocorr(zc.values, -1), Error);
}

TEST_CASE("lift is CAZAC exactly when the input has constant amplitude")
{
    const auto z4 = zc_generate(4, 1);
    CHECK(is_cazac(lift(z4, (CVector(2) << 1, -1).finished())));
    CHECK_FALSE(is_cazac(lift(z4, (CVector(2) << 1, 0).finished())));
    CHECK(is_cazac(lift(zc_generate(16, 1), (CVector(4) << 1.0, kJ, -1.0, -kJ).finished())));
    CHECK_THROWS_AS(lift(zc_generate(6, 1), (CVector(2) << 1, 1).finished()), Error);

    const std::vector<cplx> alphabet = {1.0, kJ, -1.0, -kJ, 0.0, 2.0};
    for (int N : {2, 4})
        for (int k : {1, 2, 4})
        {
            const auto zc = zc_generate(N * N * k, 1);
            std::size_t total = 1;
            for (int i = 0; i < N; ++i)
                total *= alphabet.size();
            int mismatches = 0;
            for (std::size_t code = 0; code < total; ++code)
            {
                CVector x(N);
                std::size_t c = code;
                for (int i = 0; i < N; ++i, c /= alphabet.size())
                    x[i] = alphabet[c % alphabet.size()];
                mismatches += is_cazac(lift(zc, x)) != is_constant_amplitude(x);
            }
            CHECK(mismatches == 0);
        }
}

TEST_CASE("lift places c_m x_{m mod N}")
{
    const auto zc = zc_generate(16, 3);
    const CVector x = (CVector(2) << 1.0, kJ).finished();
    const CVector out = lift(zc, x);
    for (int m = 0; m < 16; ++m)
        CHECK(std::abs(out[m] - zc.values[m] * x[m % 2]) < 1e-15);
}

}
