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

#include "omnistbc/analysis.hpp"

#include <algorithm>

#include "omnistbc/kernels.hpp"

namespace omnistbc
{

namespace
{

std::vector<CMatrix> entries_of(const std::vector<Codeword> &book)
{
    std::vector<CMatrix> out;
    out.reserve(book.size());
    for (const auto &cw : book)
        out.push_back(cw.entries);
    return out;
}

void check_pair_cap(std::size_t n, std::uint64_t max_pairs)
{
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (pairs > max_pairs)
        fail(ErrorKind::CapExceeded, std::to_string(pairs) + " codeword pairs exceed the cap of " +
                                         std::to_string(max_pairs));
}

std::uint64_t pair_count(const CodeSpec &spec)
{
    const int b = spec.bits_per_codeword();
    if (b >= 32)
        return std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t n = std::uint64_t{1} << b;
    return n * (n - 1) / 2;
}

} // namespace

double coding_gain(const std::vector<CMatrix> &codebook, std::uint64_t max_pairs)
{
    if (codebook.size() < 2)
        fail(ErrorKind::InvalidArgument, "coding gain needs at least two codewords");
    check_pair_cap(codebook.size(), max_pairs);
    const auto scan = kernels::scan_pairs(codebook, kernels::Exec::Parallel);
    if (scan.rank_deficient)
        return 0.0;
    return std::pow(scan.min_det, 1.0 / static_cast<double>(codebook.front().cols()));
}

double coding_gain(const std::vector<Codeword> &codebook, std::uint64_t max_pairs)
{
    return coding_gain(entries_of(codebook), max_pairs);
}

double psk_gain_closed_form(int L)
{
    if (L < 2)
        fail(ErrorKind::InvalidArgument, "PSK order must be at least 2");
    const double s = std::sin(kPi / L);
    return 4.0 * s * s;
}

double qostbc_gain_closed_form(int L)
{
    if (L < 2)
        fail(ErrorKind::InvalidArgument, "PSK order must be at least 2");
    const double s = std::sin(kPi / L);
    return L <= 6 ? 4.0 * s * s : 8.0 * s * s * s;
}

double ciod_gain_closed_form(double d)
{
    if (!(d > 0.0))
        fail(ErrorKind::InvalidArgument, "QAM scale must be positive");
    return 16.0 * d * d / std::sqrt(5.0);
}

double ostbc_gain_closed_form(int R)
{
    if (R < 1)
        fail(ErrorKind::InvalidArgument, "rate must be positive");
    const double d = make_pam(1 << (2 * R - 2)).scale();
    return 4.0 * d * d;
}

double closed_form_gain(const CodeSpec &spec)
{
    validate_code_spec(spec);
    switch (spec.kind)
    {
    case CodeKind::SingleStream:
    case CodeKind::Alamouti: return psk_gain_closed_form(1 << spec.rate);
    case CodeKind::Ostbc: return ostbc_gain_closed_form(spec.rate);
    case CodeKind::Qostbc: return qostbc_gain_closed_form(1 << spec.rate);
    case CodeKind::Ciod: return ciod_gain_closed_form(ciod_alphabet(spec.rate).scale());
    case CodeKind::NzeTc:
    case CodeKind::NzeOac: break;
    }
    fail(ErrorKind::InvalidArgument, "no closed-form coding gain for " + std::string(to_string(spec.kind)));
}

double code_gain(const CodeSpec &spec, GainMethod method, std::uint64_t max_pairs)
{
    validate_code_spec(spec);
    const bool fits = pair_count(spec) <= max_pairs;
    if (method == GainMethod::ClosedForm || (method == GainMethod::Auto && !fits))
        return closed_form_gain(spec);
    if (!fits)
        fail(ErrorKind::CapExceeded, "codebook of " + std::string(to_string(spec.kind)) + " at rate " +
                                         std::to_string(spec.rate) + " has too many pairs to enumerate");
    const auto book = enumerate_codebook(spec, std::size_t{1} << spec.bits_per_codeword());
    return coding_gain(book, max_pairs);
}

double pep_upper_bound(const std::vector<CMatrix> &codebook, int N, double sigma_n2, double K,
                       std::uint64_t max_pairs)
{
    if (codebook.size() < 2)
        fail(ErrorKind::InvalidArgument, "bound needs at least two codewords");
    if (!(sigma_n2 > 0.0))
        fail(ErrorKind::InvalidArgument, "noise variance must be positive");
    if (N < 1 || codebook.front().rows() != N)
        fail(ErrorKind::Dimension, "codewords do not have N rows");
    check_pair_cap(codebook.size(), max_pairs);

    const auto scan = kernels::scan_pairs(codebook, kernels::Exec::Parallel);
    if (scan.rank_deficient)
        fail(ErrorKind::RankDeficient, "codeword pair (" + std::to_string(scan.bad_i) + ", " +
                                           std::to_string(scan.bad_j) + ") is rank deficient");
    // prod lambda_n = det(dX dX^H) / N^N; every unordered pair counted twice
    const double n = static_cast<double>(N);
    const double sum = 2.0 * std::pow(n, n) * scan.inv_det_sum;
    return K * std::pow(4.0 * sigma_n2, n) * sum;
}

double pep_upper_bound(const std::vector<Codeword> &codebook, int N, double sigma_n2, double K,
                       std::uint64_t max_pairs)
{
    return pep_upper_bound(entries_of(codebook), N, sigma_n2, K, max_pairs);
}

double fit_diversity_order(const std::vector<BerPoint> &points, double snr_lo, double snr_hi)
{
    std::vector<double> xs, ys;
    for (const auto &p : points)
        if (p.snr_db >= snr_lo && p.snr_db <= snr_hi && p.ber > 0.0 && p.bit_errors >= kMinFitErrors)
        {
            xs.push_back(-p.snr_db / 10.0);
            ys.push_back(std::log10(p.ber));
        }
    if (xs.size() < 2)
        fail(ErrorKind::InvalidArgument, "diversity fit needs at least two usable points");

    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        A(i, 0) = xs[static_cast<std::size_t>(i)];
        A(i, 1) = 1.0;
        b[i] = ys[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
    return coef[0];
}

double omni_flatness(const std::vector<std::pair<double, double>> &theta_ber)
{
    if (theta_ber.empty())
        fail(ErrorKind::InvalidArgument, "flatness of an empty sweep");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto &[theta, ber] : theta_ber)
    {
        if (!(ber > 0.0))
            fail(ErrorKind::InvalidArgument, "zero BER in the sweep, run more trials");
        lo = std::min(lo, ber);
        hi = std::max(hi, ber);
    }
    return hi / lo;
}

} // namespace omnistbc
