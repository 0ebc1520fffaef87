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

#include "omnistbc/precoding.hpp"
#include "omnistbc/rng.hpp"

// One-ring correlated Rayleigh channel of a uniform linear array.

namespace omnistbc
{

/// Truncated Gaussian power azimuth spectrum on [-pi/2, pi/2].
struct PasSpec
{
    double theta0 = 0.0;            // mean angle of departure, rad
    double sigma = 5.0 * kPi / 180; // angle spread, rad
};

struct ChannelSpec
{
    int M = 64;
    double spacing_ratio = 1.0 / std::sqrt(3.0); // d / lambda
    PasSpec pas{};
};

struct CovarianceModel
{
    CMatrix R;
};

void validate_channel_spec(const ChannelSpec &spec);

/// v_m(theta) = exp(-j 2 pi spacing m sin(theta)), m = 0..M-1.
CVector steering_vector(int M, double spacing_ratio, double theta);

/// R = int v(theta) v(theta)^H p(theta) dtheta with p normalised to unit mass.
/// Composite 8-point Gauss-Legendre, panels doubled until the relative change
/// of R falls below 1e-8. Throws Convergence otherwise.
CovarianceModel one_ring_covariance(const ChannelSpec &spec);

/// Off-diagonal Frobenius energy of F R F^H over its total energy.
double dft_domain_leakage(const CMatrix &R);

/// A with A A^H = R, from the eigendecomposition of R with negative
/// eigenvalues clipped to zero.
CMatrix factor_covariance(const CMatrix &R);

/// h = A w with w ~ CN(0, I).
CVector draw_channel(const CMatrix &A, Rng &rng);
inline CVector draw_channel(const CovarianceModel &cov, Rng &rng)
{
    return draw_channel(factor_covariance(cov.R), rng);
}

/// g = W^H h
CVector effective_channel(const Precoder &p, const CVector &h);

/// || N W^H R W - I_N ||_F
double precoded_covariance_deviation(const Precoder &p, const CMatrix &R);

} // namespace omnistbc
