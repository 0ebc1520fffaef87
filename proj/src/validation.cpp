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

#include "omnistbc/validation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "omnistbc/analysis.hpp"
#include "omnistbc/channel.hpp"
#include "omnistbc/receivers.hpp"

namespace omnistbc
{

namespace
{

constexpr double kTol = 1e-9;

CodeSpec smallest(CodeKind kind)
{
    switch (kind)
    {
    case CodeKind::NzeTc: return {kind, 1, {8, 8}};
    case CodeKind::NzeOac: return {kind, 1, {8, 8}};
    default: return {kind, 1, {}};
    }
}

constexpr CodeKind kAllCodes[] = {CodeKind::SingleStream, CodeKind::Alamouti, CodeKind::Ostbc,
                                  CodeKind::Qostbc,       CodeKind::Ciod,     CodeKind::NzeTc,
                                  CodeKind::NzeOac};

std::string check_zc()
{
    for (int M : {3, 4, 8, 9, 16, 64, 128})
        for (int g = 1; g < M; ++g)
        {
            if (std::gcd(g, M) != 1)
                continue;
            const auto zc = zc_generate(M, g);
            if (!is_cazac(zc.values))
                return "M=" + std::to_string(M) + " gamma=" + std::to_string(g) + " not CAZAC";
            for (int n = 1; n < M; ++n)
                if (std::abs(periodic_autocorr(zc.values, n)) > 1e-10)
                    return "autocorrelation at shift " + std::to_string(n) + " for M=" + std::to_string(M);
        }
    return {};
}

std::string check_lift_cazac()
{
    // QPSK plus two off-circle points so both directions are exercised
    const std::vector<cplx> alphabet = {1.0, kJ, -1.0, -kJ, 0.0, 2.0};
    const auto A = alphabet.size();
    for (int N : {2, 4})
        for (int k : {1, 2, 4})
        {
            const auto zc = zc_generate(N * N * k, 1);
            std::size_t total = 1;
            for (int i = 0; i < N; ++i)
                total *= A;
            for (std::size_t code = 0; code < total; ++code)
            {
                CVector x(N);
                std::size_t c = code;
                for (int i = 0; i < N; ++i, c /= A)
                    x[i] = alphabet[c % A];
                const bool flat = is_constant_amplitude(x);
                if (is_cazac(lift(zc, x)) != flat)
                    return "N=" + std::to_string(N) + " M=" + std::to_string(N * N * k);
            }
        }
    return {};
}

std::string check_requirements_all()
{
    for (CodeKind kind : kAllCodes)
    {
        const CodeSpec spec = smallest(kind);
        const int N = spec.ports();
        const Precoder p = build_precoder(std::max(4, N * N), N, 1, preset_V(spec));
        const Encoder enc(spec);
        const int b = spec.bits_per_codeword();
        Bits bits(static_cast<std::size_t>(b));
        for (std::uint64_t payload = 0; payload < (std::uint64_t{1} << b); ++payload)
        {
            for (int i = 0; i < b; ++i)
                bits[static_cast<std::size_t>(i)] = (payload >> (b - 1 - i)) & 1u;
            const auto r = check_requirements(transmit(p, enc.encode(bits)), kTol);
            if (!r.omni || !r.per_antenna)
                return std::string(to_string(kind)) + " payload " + std::to_string(payload);
        }
    }
    return {};
}

std::string check_decoders()
{
    Rng rng(7);
    for (CodeKind kind : kAllCodes)
    {
        const CodeSpec spec = kind == CodeKind::NzeTc || kind == CodeKind::NzeOac
                                  ? CodeSpec{kind, 1, {4, 3}}
                                  : CodeSpec{kind, 1, {}};
        const Decoder dec(spec);
        const auto book = enumerate_codebook(spec);
        for (int trial = 0; trial < 20; ++trial)
        {
            CVector g(spec.ports());
            for (Eigen::Index i = 0; i < g.size(); ++i)
                g[i] = complex_normal(rng);
            for (const auto &cw : book)
            {
                RxObservation obs{receive(cw.entries, g), g, 0.0};
                if (dec.decode(obs).bits != cw.payload)
                    return std::string(to_string(kind)) + " noiseless decode failed";
            }
        }
    }
    return {};
}

std::string check_gains()
{
    for (CodeKind kind : {CodeKind::Alamouti, CodeKind::Ostbc, CodeKind::Qostbc, CodeKind::Ciod})
        for (int R : {1, 2})
        {
            const CodeSpec spec{kind, R, {}};
            const double e = code_gain(spec, GainMethod::Enumerate);
            const double c = closed_form_gain(spec);
            if (std::abs(e - c) > kTol)
                return std::string(to_string(kind)) + " R=" + std::to_string(R);
        }
    return {};
}

std::string check_covariance()
{
    for (double deg : {-60.0, 0.0, 35.0})
    {
        ChannelSpec spec;
        spec.M = 32;
        spec.pas.theta0 = deg * kPi / 180.0;
        const CMatrix R = one_ring_covariance(spec).R;
        if ((R - R.adjoint()).norm() > 1e-12)
            return "not Hermitian";
        if (std::abs(R.trace().real() - spec.M) > kTol)
            return "trace";
        Eigen::SelfAdjointEigenSolver<CMatrix> es(R, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kTol)
            return "not PSD";
    }
    return {};
}

std::string check_pep()
{
    const auto book = enumerate_codebook({CodeKind::Alamouti, 1, {}});
    const double a = pep_upper_bound(book, 2, 0.1, 1.0);
    const double b = pep_upper_bound(book, 2, 0.01, 1.0);
    if (std::abs(b / a - 1e-2) > kTol)
        return "slope";
    if (std::abs(pep_upper_bound(book, 2, 0.1, 2.0) - 2.0 * a) > kTol * a)
        return "linearity in K";
    return {};
}

} // namespace

std::vector<CheckResult> run_validation()
{
    const std::vector<std::pair<std::string, std::function<std::string()>>> checks = {
        {"zc_cazac", check_zc},
        {"lift_cazac_iff_constant_amplitude", check_lift_cazac},
        {"requirements_all_codes", check_requirements_all},
        {"noiseless_decoding", check_decoders},
        {"coding_gain_closed_forms", check_gains},
        {"covariance_invariants", check_covariance},
        {"pep_bound_scaling", check_pep},
    };
    std::vector<CheckResult> out;
    for (const auto &[name, fn] : checks)
    {
        CheckResult r{name, false, {}};
        try
        {
            r.detail = fn();
            r.passed = r.detail.empty();
        }
        catch (const std::exception &e)
        {
            r.detail = e.what();
        }
        out.push_back(r);
    }
    return out;
}

} // namespace omnistbc
