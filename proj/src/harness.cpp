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

#include "omnistbc/harness.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace omnistbc
{

namespace
{

constexpr std::uint64_t kFirstBatch = 1024;
constexpr std::uint64_t kMaxBatch = 65536;
constexpr double kMaxSweepAngleDeg = 60.0;

[[noreturn]] void config_error(const std::string &key, const std::string &msg)
{
    fail(ErrorKind::Config, "key '" + key + "': " + msg);
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string &key, const std::string &v)
{
    double out = 0.0;
    const auto *end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end)
        config_error(key, "'" + v + "' is not a number");
    return out;
}

template <class Int>
Int parse_int(const std::string &key, const std::string &v)
{
    Int out = 0;
    const auto *end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end)
        config_error(key, "'" + v + "' is not an integer");
    return out;
}

std::vector<double> parse_list(const std::string &key, const std::string &v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const std::string t = trim(item);
        if (t.empty())
            config_error(key, "empty list element");
        out.push_back(parse_double(key, t));
    }
    return out;
}

std::string format_g(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

SimConfig parse_config(const std::string &text)
{
    SimConfig cfg;
    std::map<std::string, std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::Config, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string val = trim(std::string_view(line).substr(eq + 1));
        if (key.empty())
            fail(ErrorKind::Config, "line " + std::to_string(lineno) + ": empty key");
        if (val.empty())
            config_error(key, "empty value");
        if (!seen.emplace(key, val).second)
            config_error(key, "given twice");

        if (key == "code")
        {
            try
            {
                cfg.code.kind = parse_code_kind(val);
            }
            catch (const Error &)
            {
                config_error(key, "unknown code '" + val + "'");
            }
        }
        else if (key == "rate")
            cfg.code.rate = parse_int<int>(key, val);
        else if (key == "m")
            cfg.M = parse_int<int>(key, val);
        else if (key == "gamma")
            cfg.gamma = parse_int<int>(key, val);
        else if (key == "spacing_ratio")
            cfg.spacing_ratio = parse_double(key, val);
        else if (key == "pas.theta0_deg")
            cfg.theta0_deg = parse_double(key, val);
        else if (key == "pas.sigma_deg")
            cfg.sigma_deg = parse_double(key, val);
        else if (key == "snr_db")
            cfg.snr_db = parse_list(key, val);
        else if (key == "theta0_list_deg")
            cfg.theta0_list_deg = parse_list(key, val);
        else if (key == "k")
            cfg.K = parse_double(key, val);
        else if (key == "max_trials")
            cfg.max_trials = parse_int<std::uint64_t>(key, val);
        else if (key == "min_bit_errors")
            cfg.min_bit_errors = parse_int<std::uint64_t>(key, val);
        else if (key == "master_seed")
            cfg.master_seed = parse_int<std::uint64_t>(key, val);
        else if (key == "workers")
            cfg.workers = parse_int<int>(key, val);
        else if (key == "nze.l")
            cfg.code.nze.symbols = parse_int<int>(key, val);
        else if (key == "nze.n")
            cfg.code.nze.ports = parse_int<int>(key, val);
        else if (key == "precoder_override")
        {
            if (val == "zc")
                cfg.precoder = PrecoderOverride::Zc;
            else if (val == "prbs")
                cfg.precoder = PrecoderOverride::Prbs;
            else
                config_error(key, "expected zc or prbs");
        }
        else
            config_error(key, "unknown key");
    }
    validate_config(cfg);
    return cfg;
}

SimConfig load_config(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        fail(ErrorKind::Io, "cannot read config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void validate_config(const SimConfig &cfg)
{
    if (cfg.code.rate < 1 || cfg.code.rate > 8)
        config_error("rate", "must lie in [1, 8]");
    const bool nze = cfg.code.kind == CodeKind::NzeTc || cfg.code.kind == CodeKind::NzeOac;
    if (nze)
    {
        if (cfg.code.nze.ports < 1)
            config_error("nze.n", "required for NZE codes");
        try
        {
            validate_code_spec(cfg.code);
        }
        catch (const Error &e)
        {
            config_error("nze.l", e.what());
        }
    }
    const int N = cfg.code.ports();
    if (cfg.M < 1 || cfg.M % (N * N) != 0)
        config_error("m", "M=" + std::to_string(cfg.M) + " is not a multiple of N^2=" +
                              std::to_string(N * N) + " for code " + std::string(to_string(cfg.code.kind)));
    if (cfg.gamma < 1 || cfg.gamma >= cfg.M || std::gcd(cfg.gamma, cfg.M) != 1)
        config_error("gamma", "must be coprime with M and lie in [1, M)");
    if (!(cfg.spacing_ratio > 0.0))
        config_error("spacing_ratio", "must be positive");
    if (!(cfg.sigma_deg > 0.0))
        config_error("pas.sigma_deg", "must be positive");
    if (!(std::abs(cfg.theta0_deg) <= 90.0))
        config_error("pas.theta0_deg", "must lie in [-90, 90]");
    if (cfg.snr_db.empty())
        config_error("snr_db", "at least one SNR point is required");
    for (double t : cfg.theta0_list_deg)
        if (!(std::abs(t) <= kMaxSweepAngleDeg))
            config_error("theta0_list_deg", "angles must lie in [-60, 60]");
    if (!(cfg.K > 0.0))
        config_error("k", "must be positive");
    if (cfg.max_trials < 1)
        config_error("max_trials", "must be at least 1");
    if (cfg.min_bit_errors < 1)
        config_error("min_bit_errors", "must be at least 1");
    if (cfg.workers < 0)
        config_error("workers", "must be positive");
}

std::string config_digest(const SimConfig &cfg)
{
    std::ostringstream s;
    s.precision(17);
    s << to_string(cfg.code.kind) << '|' << cfg.code.rate << '|' << cfg.code.nze.symbols << '|'
      << cfg.code.nze.ports << '|' << cfg.M << '|' << cfg.gamma << '|' << cfg.spacing_ratio << '|'
      << cfg.theta0_deg << '|' << cfg.sigma_deg << '|' << cfg.K << '|' << cfg.max_trials << '|'
      << cfg.min_bit_errors << '|' << cfg.master_seed << '|' << static_cast<int>(cfg.precoder);
    for (double v : cfg.snr_db)
        s << '|' << v;
    s << '#';
    for (double v : cfg.theta0_list_deg)
        s << '|' << v;

    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s.str())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int resolve_workers(const SimConfig &cfg, std::optional<int> cli_override)
{
    if (cli_override)
    {
        if (*cli_override < 1)
            fail(ErrorKind::Config, "--workers must be positive");
        return *cli_override;
    }
    if (cfg.workers > 0)
        return cfg.workers;
    if (const char *env = std::getenv("OMNISTBC_WORKERS"))
    {
        int w = 0;
        const std::string v = env;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), w);
        if (ec != std::errc() || ptr != v.data() + v.size() || w < 1)
            fail(ErrorKind::Config, "OMNISTBC_WORKERS='" + v + "' is not a positive integer");
        return w;
    }
    return std::max(1, omp_get_max_threads());
}

namespace
{

Precoder make_precoder(const SimConfig &cfg)
{
    const CMatrix V = preset_V(cfg.code);
    if (cfg.precoder == PrecoderOverride::Prbs)
        return build_precoder_from_sequence(prbs_sequence(cfg.M), V);
    return build_precoder(cfg.M, cfg.code.ports(), cfg.gamma, V);
}

CovarianceModel make_covariance(const SimConfig &cfg, double theta0)
{
    ChannelSpec spec;
    spec.M = cfg.M;
    spec.spacing_ratio = cfg.spacing_ratio;
    spec.pas.theta0 = theta0;
    spec.pas.sigma = cfg.sigma_deg * kPi / 180.0;
    return one_ring_covariance(spec);
}

} // namespace

LinkContext::LinkContext(const SimConfig &cfg, double theta0_rad)
    : cfg_(cfg), theta0_(theta0_rad), precoder_(make_precoder(cfg)), cov_(make_covariance(cfg, theta0_rad)),
      encoder_(cfg.code), decoder_(cfg.code), bits_(cfg.code.bits_per_codeword())
{
    B_ = precoder_.W.adjoint() * factor_covariance(cov_.R);
}

TrialOutcome LinkContext::run_trial(double snr_db, std::uint64_t trial_index) const
{
    Rng rng(trial_seed(cfg_.master_seed, snr_db, theta0_, trial_index));

    Bits bits(static_cast<std::size_t>(bits_));
    for (auto &b : bits)
        b = static_cast<std::uint8_t>(rng() >> 63);
    const Codeword X = encoder_.encode(bits);

    CVector w(cfg_.M);
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w[i] = complex_normal(rng);

    RxObservation obs;
    obs.sigma_n2 = db_to_noise_variance(snr_db);
    obs.g = (B_ * w).conjugate();
    obs.y = add_awgn(receive(X.entries, obs.g), obs.sigma_n2, rng);

    TrialOutcome out;
    out.bits_sent = bits_;
    try
    {
        const Decision d = decoder_.decode(obs);
        for (std::size_t i = 0; i < bits.size(); ++i)
            out.bit_errors += (d.bits[i] != bits[i]);
    }
    catch (const Error &e)
    {
        if (e.kind() != ErrorKind::RankDeficient && e.kind() != ErrorKind::Undecodable)
            throw;
        out.aborted = true;
        out.bit_errors = 0;
    }
    return out;
}

TrialOutcome run_trial(const SimConfig &cfg, double snr_db, double theta0_rad, std::uint64_t trial_index)
{
    return LinkContext(cfg, theta0_rad).run_trial(snr_db, trial_index);
}

namespace kernels
{

TrialTally run_trials(const LinkContext &ctx, double snr_db, std::uint64_t first, std::uint64_t count,
                      Exec exec, int workers)
{
    TrialTally t;
    if (exec == Exec::Serial || workers <= 1)
    {
        for (std::uint64_t i = first; i < first + count; ++i)
        {
            const TrialOutcome o = ctx.run_trial(snr_db, i);
            if (o.aborted)
                ++t.aborted;
            else
            {
                ++t.trials;
                t.bit_errors += static_cast<std::uint64_t>(o.bit_errors);
            }
        }
        return t;
    }

    std::uint64_t trials = 0, errors = 0, aborted = 0;
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for num_threads(workers) schedule(static) reduction(+ : trials, errors, aborted)
    for (std::int64_t k = 0; k < n; ++k)
    {
        const TrialOutcome o = ctx.run_trial(snr_db, first + static_cast<std::uint64_t>(k));
        if (o.aborted)
            ++aborted;
        else
        {
            ++trials;
            errors += static_cast<std::uint64_t>(o.bit_errors);
        }
    }
    t.trials = trials;
    t.bit_errors = errors;
    t.aborted = aborted;
    return t;
}

} // namespace kernels

BerPoint run_point(const LinkContext &ctx, double snr_db, int workers)
{
    const SimConfig &cfg = ctx.config();
    const auto exec = workers > 1 ? kernels::Exec::Parallel : kernels::Exec::Serial;
    kernels::TrialTally tally;
    std::uint64_t next = 0;
    std::uint64_t batch = kFirstBatch;
    while (next < cfg.max_trials && tally.bit_errors < cfg.min_bit_errors)
    {
        const std::uint64_t count = std::min(batch, cfg.max_trials - next);
        const auto t = kernels::run_trials(ctx, snr_db, next, count, exec, workers);
        tally.trials += t.trials;
        tally.bit_errors += t.bit_errors;
        tally.aborted += t.aborted;
        next += count;
        batch = std::min(batch * 2, kMaxBatch);
    }

    BerPoint p;
    p.code = std::string(to_string(cfg.code.kind));
    p.rate_bps = cfg.code.bit_rate();
    p.M = cfg.M;
    p.snr_db = snr_db;
    p.theta0_deg = ctx.theta0() * 180.0 / kPi;
    p.trials = tally.trials;
    p.bit_errors = tally.bit_errors;
    p.aborted = tally.aborted;
    p.bits_per_trial = ctx.bits_per_trial();
    p.ber = tally.trials > 0 ? static_cast<double>(tally.bit_errors) /
                                   (static_cast<double>(tally.trials) * ctx.bits_per_trial())
                             : 0.0;
    p.seed = cfg.master_seed;
    p.config_digest = config_digest(cfg);
    return p;
}

std::vector<BerPoint> run_ber_sweep(const SimConfig &cfg, int workers)
{
    validate_config(cfg);
    const LinkContext ctx(cfg, cfg.theta0_deg * kPi / 180.0);
    std::vector<BerPoint> out;
    for (double snr : cfg.snr_db)
        out.push_back(run_point(ctx, snr, workers));
    return out;
}

std::vector<BerPoint> run_angle_sweep(const SimConfig &cfg, double snr_db, int workers)
{
    validate_config(cfg);
    if (cfg.theta0_list_deg.empty())
        config_error("theta0_list_deg", "angle sweep needs at least one angle");
    std::vector<BerPoint> out;
    for (double deg : cfg.theta0_list_deg)
    {
        const LinkContext ctx(cfg, deg * kPi / 180.0);
        BerPoint p = run_point(ctx, snr_db, workers);
        p.theta0_deg = deg;
        out.push_back(p);
    }
    return out;
}

void write_csv(const std::vector<BerPoint> &points, std::ostream &os)
{
    os << "code,rate_bps,M,snr_db,theta0_deg,trials,bit_errors,ber,seed\n";
    for (const auto &p : points)
        os << p.code << ',' << format_g(p.rate_bps) << ',' << p.M << ',' << format_g(p.snr_db) << ','
           << format_g(p.theta0_deg) << ',' << p.trials << ',' << p.bit_errors << ',' << format_g(p.ber)
           << ',' << p.seed << '\n';
}

void emit_csv(const std::vector<BerPoint> &points, const std::string &path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    write_csv(points, f);
    f.flush();
    if (!f)
        fail(ErrorKind::Io, "write to '" + path + "' failed");
}

std::vector<BerPoint> read_csv(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        fail(ErrorKind::Io, "cannot read '" + path + "'");
    std::string line;
    std::getline(f, line); // header
    std::vector<BerPoint> out;
    while (std::getline(f, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ','))
            cols.push_back(c);
        if (cols.size() != 9)
            fail(ErrorKind::Io, "'" + path + "': expected 9 fields, got " + std::to_string(cols.size()));
        BerPoint p;
        p.code = cols[0];
        p.rate_bps = std::stod(cols[1]);
        p.M = std::stoi(cols[2]);
        p.snr_db = std::stod(cols[3]);
        p.theta0_deg = std::stod(cols[4]);
        p.trials = std::stoull(cols[5]);
        p.bit_errors = std::stoull(cols[6]);
        p.ber = std::stod(cols[7]);
        p.seed = std::stoull(cols[8]);
        out.push_back(p);
    }
    return out;
}

} // namespace omnistbc
