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

#include "omnistbc/analysis.hpp"
#include "omnistbc/kernels.hpp"
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

BerPoint synthetic(double snr_db, double ber)
{
    BerPoint p;
    p.snr_db = snr_db;
    p.ber = ber;
    p.bit_errors = 1000;
    p.trials = 1000;
    p.bits_per_trial = 1;
    return p;
}

std::vector<Codeword> bpsk_ac_book()
{
    std::vector<Codeword> book;
    for (double a : {1.0, -1.0})
        for (double b : {1.0, -1.0})
            book.push_back(encode_ac(a, b));
    return book;
}

} // namespace

TEST_SUITE("analysis")
{

TEST_CASE("coding gain examples")
{
    CHECK(coding_gain(bpsk_ac_book()) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(coding_gain(enumerate_codebook(spec_of(CodeKind::Qostbc, 1))) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(coding_gain(enumerate_codebook(spec_of(CodeKind::Ciod, 1))) ==
          doctest::Approx(8.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(coding_gain(std::vector<Codeword>{encode_ac(1.0, 1.0)}), Error);
    CHECK_THROWS_AS(coding_gain(std::vector<Codeword>{}), Error);
}

TEST_CASE("coding gain agrees with the eigenvalue oracle")
{
    const std::vector<CodeSpec> specs = {spec_of(CodeKind::SingleStream, 3), spec_of(CodeKind::Alamouti, 1),
                                         spec_of(CodeKind::Alamouti, 2),     spec_of(CodeKind::Ostbc, 1),
                                         spec_of(CodeKind::Ostbc, 2),        spec_of(CodeKind::Qostbc, 1),
                                         spec_of(CodeKind::Qostbc, 2),       spec_of(CodeKind::Ciod, 1),
                                         spec_of(CodeKind::Ciod, 2)};
    for (const auto &s : specs)
    {
        const auto book = enumerate_codebook(s);
        INFO(to_string(s.kind), " R=", s.rate);
        CHECK(coding_gain(book) == doctest::Approx(oracle::coding_gain_by_eigenvalues(book)).epsilon(1e-9));
    }
}

TEST_CASE("a rank-deficient pair gives zero gain")
{
    std::vector<CMatrix> book = {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2) * 2.0};
    book[1](1, 1) = 1.0;
    CHECK(coding_gain(book) == 0.0);
    CHECK_THROWS_AS(pep_upper_bound(book, 2, 0.1, 1.0), Error);
}

TEST_CASE("coding gain ignores a common phase")
{
    auto book = enumerate_codebook(spec_of(CodeKind::Ciod, 1));
    const double g0 = coding_gain(book);
    for (auto &cw : book)
        cw.entries *= std::polar(1.0, 0.77);
    CHECK(coding_gain(book) == doctest::Approx(g0).epsilon(1e-12));
}

TEST_CASE("closed forms")
{
    CHECK(qostbc_gain_closed_form(2) == doctest::Approx(4.0));
    CHECK(qostbc_gain_closed_form(4) == doctest::Approx(2.0));
    CHECK(qostbc_gain_closed_form(8) == doctest::Approx(8 * std::pow(std::sin(kPi / 8), 3)));
    CHECK(ciod_gain_closed_form(1 / std::sqrt(2.0)) == doctest::Approx(8 / std::sqrt(5.0)));
    CHECK(ciod_gain_closed_form(2.0) == doctest::Approx(4 * ciod_gain_closed_form(1.0)));
    CHECK(ostbc_gain_closed_form(1) == doctest::Approx(4.0));
    CHECK(psk_gain_closed_form(4) == doctest::Approx(2.0));
}

TEST_CASE("closed forms match enumeration")
{
    for (int R : {1, 2})
    {
        CHECK(code_gain(spec_of(CodeKind::Qostbc, R), GainMethod::Enumerate) ==
              doctest::Approx(qostbc_gain_closed_form(1 << R)).epsilon(1e-9));
        CHECK(code_gain(spec_of(CodeKind::Ciod, R), GainMethod::Enumerate) ==
              doctest::Approx(ciod_gain_closed_form(ciod_alphabet(R).scale())).epsilon(1e-9));
        CHECK(code_gain(spec_of(CodeKind::Ostbc, R), GainMethod::Enumerate) ==
              doctest::Approx(ostbc_gain_closed_form(R)).epsilon(1e-9));
        CHECK(code_gain(spec_of(CodeKind::Alamouti, R), GainMethod::Enumerate) ==
              doctest::Approx(psk_gain_closed_form(1 << R)).epsilon(1e-9));
    }
    // 8-PSK: 4096 codewords, about 8.4 million pairs
    CHECK(code_gain(spec_of(CodeKind::Qostbc, 3), GainMethod::Enumerate, std::uint64_t{1} << 24) ==
          doctest::Approx(qostbc_gain_closed_form(8)).epsilon(1e-9));
    CHECK_THROWS_AS(code_gain(spec_of(CodeKind::Qostbc, 3), GainMethod::Enumerate), Error);
    CHECK(code_gain(spec_of(CodeKind::Qostbc, 3), GainMethod::Auto) ==
          doctest::Approx(qostbc_gain_closed_form(8)).epsilon(1e-12));
}

TEST_CASE("gain orderings across bit rates")
{
    auto gain = [](CodeKind k, int R) { return closed_form_gain(spec_of(k, R)); };
    for (int R = 1; R <= 4; ++R)
        CHECK(gain(CodeKind::Qostbc, R) >= gain(CodeKind::Ciod, R));
    for (int R : {5, 6})
        CHECK(gain(CodeKind::Ciod, R) > gain(CodeKind::Qostbc, R));
    CHECK(gain(CodeKind::Ostbc, 1) == doctest::Approx(gain(CodeKind::Qostbc, 1)));
    for (int R = 2; R <= 6; ++R)
    {
        CHECK(gain(CodeKind::Ostbc, R) < gain(CodeKind::Qostbc, R));
        CHECK(gain(CodeKind::Ostbc, R) < gain(CodeKind::Ciod, R));
    }
}

TEST_CASE("PEP bound")
{
    const auto ac = bpsk_ac_book();
    const double v = pep_upper_bound(ac, 2, 0.1, 1.0);
    CHECK(v == doctest::Approx(oracle::pep_by_eigenvalues(ac, 2, 0.1, 1.0)).epsilon(1e-12));
    CHECK(v == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(pep_upper_bound(ac, 2, 0.1, 2.0) == doctest::Approx(2 * v).epsilon(1e-12));

    for (const auto &s : {spec_of(CodeKind::Alamouti, 2), spec_of(CodeKind::Qostbc, 1), spec_of(CodeKind::Ciod, 1),
                          spec_of(CodeKind::Ostbc, 1)})
    {
        const auto book = enumerate_codebook(s);
        const int N = s.ports();
        const double a = pep_upper_bound(book, N, 0.05, 1.0);
        CHECK(a == doctest::Approx(oracle::pep_by_eigenvalues(book, N, 0.05, 1.0)).epsilon(1e-9));
        CHECK(pep_upper_bound(book, N, 0.005, 1.0) / a == doctest::Approx(std::pow(10.0, -N)).epsilon(1e-9));
    }
}

TEST_CASE("diversity fit on synthetic curves")
{
    std::vector<BerPoint> two, one, flat;
    for (double snr = 0; snr <= 30; snr += 5)
    {
        const double lin = std::pow(10.0, snr / 10);
        two.push_back(synthetic(snr, 0.3 * std::pow(lin, -2.0)));
        one.push_back(synthetic(snr, 0.2 / lin));
        flat.push_back(synthetic(snr, 0.01));
    }
    CHECK(fit_diversity_order(two, 0, 30) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(fit_diversity_order(one, 10, 20) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(fit_diversity_order(flat, 0, 30)) < 1e-9);

    CHECK_THROWS_AS(fit_diversity_order(two, 11, 14), Error);
    auto sparse = two;
    for (auto &p : sparse)
        p.bit_errors = 10;
    CHECK_THROWS_AS(fit_diversity_order(sparse, 0, 30), Error);
}

TEST_CASE("flatness")
{
    CHECK(omni_flatness({{0.0, 0.01}, {0.5, 0.01}, {1.0, 0.01}}) == doctest::Approx(1.0));
    CHECK(omni_flatness({{0.0, 0.01}, {0.5, 0.02}, {1.0, 0.01}}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(omni_flatness({{0.0, 0.01}, {0.5, 0.0}}), Error);
}

TEST_CASE("serial and parallel pair scans agree")
{
    for (const auto &s : {spec_of(CodeKind::Alamouti, 3), spec_of(CodeKind::Qostbc, 2), spec_of(CodeKind::Ciod, 2),
                          spec_of(CodeKind::SingleStream, 4)})
    {
        std::vector<CMatrix> book;
        for (const auto &cw : enumerate_codebook(s))
            book.push_back(cw.entries);
        const auto a = kernels::scan_pairs(book, kernels::Exec::Serial);
        const auto b = kernels::scan_pairs(book, kernels::Exec::Parallel);
        CHECK(a.pairs == b.pairs);
        CHECK(a.min_det == b.min_det);
        CHECK(a.min_i == b.min_i);
        CHECK(a.min_j == b.min_j);
        CHECK(a.rank_deficient == b.rank_deficient);
        CHECK(a.inv_det_sum == doctest::Approx(b.inv_det_sum).epsilon(1e-12));
    }
}

}
