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

#include <string>

#include "omnistbc/codes.hpp"

// Coding gain, the pairwise-error-probability bound and BER curve metrics.

namespace omnistbc
{

inline constexpr std::uint64_t kDefaultPairCap = std::uint64_t{1} << 20;

struct BerPoint
{
    std::string code;
    double rate_bps = 0.0;
    int M = 0;
    double snr_db = 0.0;
    double theta0_deg = 0.0;
    std::uint64_t trials = 0;     // decoded trials (aborted ones excluded)
    std::uint64_t bit_errors = 0;
    std::uint64_t aborted = 0;    // rank-deficient zero-forcing trials
    int bits_per_trial = 0;
    double ber = 0.0;
    std::uint64_t seed = 0;
    std::string config_digest;
};

/// min over distinct codeword pairs of det(dX dX^H)^{1/T}; 0 if any pair is
/// rank deficient. Throws CapExceeded above `max_pairs` unordered pairs.
double coding_gain(const std::vector<CMatrix> &codebook, std::uint64_t max_pairs = kDefaultPairCap);
double coding_gain(const std::vector<Codeword> &codebook, std::uint64_t max_pairs = kDefaultPairCap);

/// 4 sin^2(pi/L) for L <= 6, 8 sin^3(pi/L) above.
double qostbc_gain_closed_form(int L);
/// 16 d^2 / sqrt(5)
double ciod_gain_closed_form(double d);
/// 4 d^2 of the 2^{2R-1}-PAM alphabet.
double ostbc_gain_closed_form(int R);
/// 4 sin^2(pi/L), the minimum squared PSK distance (single stream and Alamouti).
double psk_gain_closed_form(int L);
/// Closed form for any code with one (everything but the NZE codes).
double closed_form_gain(const CodeSpec &spec);

enum class GainMethod
{
    Enumerate,
    ClosedForm,
    Auto, // enumerate when the pair count fits the cap
};

double code_gain(const CodeSpec &spec, GainMethod method, std::uint64_t max_pairs = kDefaultPairCap);

/// K (4 sigma_n2)^N sum over ordered pairs of prod_n 1/lambda_n, with lambda
/// the eigenvalues of (1/N) dX dX^H. Throws RankDeficient naming the pair.
double pep_upper_bound(const std::vector<CMatrix> &codebook, int N, double sigma_n2, double K,
                       std::uint64_t max_pairs = kDefaultPairCap);
double pep_upper_bound(const std::vector<Codeword> &codebook, int N, double sigma_n2, double K,
                       std::uint64_t max_pairs = kDefaultPairCap);

inline constexpr std::uint64_t kMinFitErrors = 100;

/// Least-squares slope of log10(ber) against -snr_db/10 over points inside
/// [snr_lo, snr_hi] with ber > 0 and at least kMinFitErrors bit errors.
double fit_diversity_order(const std::vector<BerPoint> &points, double snr_lo, double snr_hi);

/// max(ber) / min(ber) over an angle sweep.
double omni_flatness(const std::vector<std::pair<double, double>> &theta_ber);

} // namespace omnistbc
