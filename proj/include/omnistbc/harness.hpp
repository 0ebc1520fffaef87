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

#include <iosfwd>
#include <optional>
#include <string>

#include "omnistbc/analysis.hpp"
#include "omnistbc/channel.hpp"
#include "omnistbc/kernels.hpp"
#include "omnistbc/receivers.hpp"

// Seeded Monte Carlo BER engine, sweeps and CSV output.

namespace omnistbc
{

enum class PrecoderOverride
{
    Zc,
    Prbs,
};

struct SimConfig
{
    CodeSpec code{CodeKind::Alamouti, 1, {}};
    int M = 64;
    int gamma = 1;
    double spacing_ratio = 1.0 / std::sqrt(3.0);
    double theta0_deg = 0.0;
    double sigma_deg = 5.0;
    std::vector<double> snr_db;
    std::vector<double> theta0_list_deg;
    double K = 1.0;
    std::uint64_t max_trials = 1000000;
    std::uint64_t min_bit_errors = 200;
    std::uint64_t master_seed = 1;
    int workers = 0; // 0: not set
    PrecoderOverride precoder = PrecoderOverride::Zc;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys, malformed
/// values and violated invariants throw ErrorKind::Config naming the key.
SimConfig parse_config(const std::string &text);
SimConfig load_config(const std::string &path);
void validate_config(const SimConfig &cfg);

/// Stable FNV-1a digest of every field that affects results.
std::string config_digest(const SimConfig &cfg);

/// Worker count: explicit override, then the config, then OMNISTBC_WORKERS, then the OpenMP default.
int resolve_workers(const SimConfig &cfg, std::optional<int> cli_override);

struct TrialOutcome
{
    int bits_sent = 0;
    int bit_errors = 0;
    bool aborted = false;
};

/// Everything a trial needs for one (config, theta0): built once, shared read-only.
class LinkContext
{
public:
    LinkContext(const SimConfig &cfg, double theta0_rad);

    const SimConfig &config() const noexcept { return cfg_; }
    double theta0() const noexcept { return theta0_; }
    const Precoder &precoder() const noexcept { return precoder_; }
    const CovarianceModel &covariance() const noexcept { return cov_; }
    int bits_per_trial() const noexcept { return bits_; }

    /// Deterministic in (master_seed, snr_db, theta0, trial_index). Draw order:
    /// payload bits, channel innovations (M), noise (T).
    TrialOutcome run_trial(double snr_db, std::uint64_t trial_index) const;

private:
    SimConfig cfg_;
    double theta0_;
    Precoder precoder_;
    CovarianceModel cov_;
    CMatrix B_; // W^H A, so that W^H h = B w
    Encoder encoder_;
    Decoder decoder_;
    int bits_;
};

namespace kernels
{

struct TrialTally
{
    std::uint64_t trials = 0; // decoded trials
    std::uint64_t bit_errors = 0;
    std::uint64_t aborted = 0;
};

/// Trials first .. first+count-1. Integer counters only, so the parallel
/// version matches the serial one exactly for any worker count.
TrialTally run_trials(const LinkContext &ctx, double snr_db, std::uint64_t first, std::uint64_t count,
                      Exec exec, int workers = 1);

} // namespace kernels

/// run_trial(cfg, ...) convenience wrapper; builds a fresh context.
TrialOutcome run_trial(const SimConfig &cfg, double snr_db, double theta0_rad, std::uint64_t trial_index);

std::vector<BerPoint> run_ber_sweep(const SimConfig &cfg, int workers = 1);
std::vector<BerPoint> run_angle_sweep(const SimConfig &cfg, double snr_db, int workers = 1);

/// One SNR point on an existing context: batches of 1024 trials doubling to
/// 65536, stopping at a batch boundary once min_bit_errors or max_trials is reached.
BerPoint run_point(const LinkContext &ctx, double snr_db, int workers);

void write_csv(const std::vector<BerPoint> &points, std::ostream &os);
void emit_csv(const std::vector<BerPoint> &points, const std::string &path);
std::vector<BerPoint> read_csv(const std::string &path);

} // namespace omnistbc
