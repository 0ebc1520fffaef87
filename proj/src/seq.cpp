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

#include "omnistbc/seq.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/FFT>

namespace omnistbc
{

ZcSequence zc_generate(int M, int gamma)
{
    if (M < 2 || gamma < 1 || gamma >= M || std::gcd(gamma, M) != 1)
        fail(ErrorKind::InvalidRoot,
             "gamma=" + std::to_string(gamma) + " is not a root for M=" + std::to_string(M));

    ZcSequence zc;
    zc.length = M;
    zc.root = gamma;
    zc.values.resize(M);

    // c_m = exp(j pi k / M) with k = gamma m^2 (even M) or gamma m (m + 1) (odd M).
    // k only matters modulo 2M.
    const std::int64_t period = 2 * static_cast<std::int64_t>(M);
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(M));
    for (std::int64_t m = 0; m < M; ++m)
    {
        const std::int64_t q = (M % 2 == 0) ? (m * m) % period : (m * (m + 1)) % period;
        const std::int64_t k = (static_cast<std::int64_t>(gamma) * q) % period;
        zc.values[m] = std::polar(amplitude, kPi * static_cast<double>(k) / M);
    }
    return zc;
}

namespace
{

CVector dft_impl(const CVector &v, bool inverse)
{
    if (v.size() == 0)
        fail(ErrorKind::InvalidArgument, "DFT of an empty vector");
    if (v.size() == 1)
        return v; // kissfft does not handle n = 1

    const auto n = static_cast<std::size_t>(v.size());
    std::vector<cplx> in(v.data(), v.data() + n);
    std::vector<cplx> out(n);

    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    if (inverse)
        fft.inv(out, in);
    else
        fft.fwd(out, in);

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CVector result(v.size());
    for (std::size_t i = 0; i < n; ++i)
        result[static_cast<Eigen::Index>(i)] = out[i] * scale;
    return result;
}

} // namespace

CVector unitary_dft(const CVector &v)
{
    return dft_impl(v, false);
}

CVector unitary_idft(const CVector &v)
{
    return dft_impl(v, true);
}

bool is_constant_amplitude(const CVector &v, double tol)
{
    if (v.size() == 0)
        fail(ErrorKind::InvalidArgument, "amplitude check of an empty vector");
    if (!(tol > 0.0))
        fail(ErrorKind::InvalidArgument, "amplitude tolerance must be positive");

    const RVector mag = v.cwiseAbs();
    const double hi = mag.maxCoeff();
    const double lo = mag.minCoeff();
    if (hi == 0.0)
        return false;
    return hi - lo <= tol * hi;
}

bool is_cazac(const CVector &v, double tol)
{
    return is_constant_amplitude(v, tol) && is_constant_amplitude(unitary_dft(v), tol);
}

cplx periodic_autocorr(const CVector &v, int shift)
{
    const auto M = static_cast<int>(v.size());
    if (shift < 0 || shift >= M)
        fail(ErrorKind::InvalidArgument,
             "shift " + std::to_string(shift) + " outside [0, " + std::to_string(M) + ")");

    cplx acc{0.0, 0.0};
    for (int i = 0; i < M; ++i)
        acc += std::conj(v[i]) * v[(i - shift + M) % M];
    return acc;
}

CVector lift(const ZcSequence &c, const CVector &x)
{
    const auto M = static_cast<Eigen::Index>(c.values.size());
    const auto N = x.size();
    if (N == 0 || M % (N * N) != 0)
        fail(ErrorKind::Dimension,
             "lift needs M=" + std::to_string(M) + " to be a multiple of N^2 with N=" +
                 std::to_string(N));

    CVector out(M);
    for (Eigen::Index m = 0; m < M; ++m)
        out[m] = c.values[m] * x[m % N];
    return out;
}

} // namespace omnistbc
