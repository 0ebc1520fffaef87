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

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "omnistbc/analysis.hpp"
#include "omnistbc/harness.hpp"
#include "omnistbc/validation.hpp"

using namespace omnistbc;

namespace
{

void apply_overrides(SimConfig &cfg, const std::optional<std::uint64_t> &seed)
{
    if (seed)
        cfg.master_seed = *seed;
}

GainMethod parse_method(const std::string &m)
{
    if (m == "enum")
        return GainMethod::Enumerate;
    if (m == "closed")
        return GainMethod::ClosedForm;
    return GainMethod::Auto;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"omnistbc - omnidirectional space-time block code simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    app.add_option("--seed", seed, "override master_seed");
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    auto *validate = app.add_subcommand("validate", "run the invariant self-check");

    std::string config_path, out_path;
    auto *ber = app.add_subcommand("ber-sweep", "BER versus SNR");
    ber->add_option("--config", config_path, "config file")->required();
    ber->add_option("--out", out_path, "output CSV")->required();

    double angle_snr = 0.0;
    auto *angle = app.add_subcommand("angle-sweep", "BER versus mean angle of departure");
    angle->add_option("--config", config_path, "config file")->required();
    angle->add_option("--snr-db", angle_snr, "SNR in dB")->required();
    angle->add_option("--out", out_path, "output CSV")->required();

    std::string code_name;
    int rate = 1;
    std::string method = "auto";
    auto *gain = app.add_subcommand("coding-gain", "minimum determinant over codeword pairs");
    gain->add_option("--code", code_name, "ac, ostbc, qostbc, ciod or single")->required();
    gain->add_option("--rate", rate, "bit rate R")->required();
    gain->add_option("--method", method, "enum, closed or auto")
        ->check(CLI::IsMember({"enum", "closed", "auto"}));

    double pep_snr = 0.0;
    double K = 1.0;
    auto *pep = app.add_subcommand("pep-bound", "pairwise error probability upper bound");
    pep->add_option("--code", code_name, "code")->required();
    pep->add_option("--rate", rate, "bit rate R")->required();
    pep->add_option("--snr-db", pep_snr, "SNR in dB")->required();
    pep->add_option("--k", K, "number of terminals")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (validate->parsed())
        {
            bool ok = true;
            for (const auto &r : run_validation())
            {
                std::printf("%s %s%s%s\n", r.passed ? "ok  " : "FAIL", r.name.c_str(),
                            r.detail.empty() ? "" : ": ", r.detail.c_str());
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
        if (ber->parsed() || angle->parsed())
        {
            SimConfig cfg = load_config(config_path);
            apply_overrides(cfg, seed);
            const int w = resolve_workers(cfg, workers);
            const auto points = ber->parsed() ? run_ber_sweep(cfg, w) : run_angle_sweep(cfg, angle_snr, w);
            emit_csv(points, out_path);
            for (const auto &p : points)
                if (p.aborted > 0)
                    std::fprintf(stderr, "snr %.3g dB, theta0 %.3g deg: %llu aborted trials\n", p.snr_db,
                                 p.theta0_deg, static_cast<unsigned long long>(p.aborted));
            return 0;
        }
        if (gain->parsed())
        {
            const CodeSpec spec{parse_code_kind(code_name), rate, {}};
            std::printf("%.12g\n", code_gain(spec, parse_method(method)));
            return 0;
        }
        if (pep->parsed())
        {
            const CodeSpec spec{parse_code_kind(code_name), rate, {}};
            const auto book = enumerate_codebook(spec);
            std::printf("%.12g\n", pep_upper_bound(book, spec.ports(), db_to_noise_variance(pep_snr), K));
            return 0;
        }
    }
    catch (const Error &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
