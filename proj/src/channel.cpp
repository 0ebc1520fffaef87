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

#include "omnistbc/channel.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss.hpp>

namespace omnistbc
{

namespace
{

constexpr double kQuadTol = 1e-8;
constexpr int kInitialPanels = 8;
constexpr int kMaxPanels = 1 << 16;
constexpr double kSupportSigmas = 12.0;

struct Rule
{
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

const Rule &gauss8()
{
    static const Rule rule = [] {
        using G = boost::math::quadrature::gauss<double, 8>;
        Rule r;
        const auto &x = G::abscissa();
        const auto &w = G::weights();
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            r.nodes.push_back(x[i]);
            r.weights.push_back(w[i]);
            if (x[i] != 0.0)
            {
                r.nodes.push_back(-x[i]);
                r.weights.push_back(w[i]);
            }
        }
        return r;
    }();
    return rule;
}

// First column r_k = R_{k,0} of the Toeplitz covariance using `panels` panels.
CVector covariance_column(const ChannelSpec &spec, double lo, double hi, int panels)
{
    const Rule &rule = gauss8();
    const double width = (hi - lo) / panels;
    const double s2 = 2.0 * spec.pas.sigma * spec.pas.sigma;
    CVector r = CVector::Zero(spec.M);
    double mass = 0.0;
    for (int p = 0; p < panels; ++p)
    {
        const double mid = lo + (p + 0.5) * width;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        {
            const double theta = mid + 0.5 * width * rule.nodes[i];
            const double d = theta - spec.pas.theta0;
            const double wp = 0.5 * width * rule.weights[i] * std::exp(-d * d / s2);
            mass += wp;
            const cplx step = std::polar(1.0, -2.0 * kPi * spec.spacing_ratio * std::sin(theta));
            cplx phase{1.0, 0.0};
            for (int k = 0; k < spec.M; ++k)
            {
                r[k] += wp * phase;
                phase *= step;
            }
        }
    }
    return r / mass;
}

double toeplitz_norm2(const CVector &r)
{
    const auto M = r.size();
    double acc = static_cast<double>(M) * std::norm(r[0]);
    for (Eigen::Index k = 1; k < M; ++k)
        acc += 2.0 * static_cast<double>(M - k) * std::norm(r[k]);
    return acc;
}

} // namespace

void validate_channel_spec(const ChannelSpec &spec)
{
    if (spec.M < 1)
        fail(ErrorKind::InvalidArgument, "M must be positive");
    if (!(spec.spacing_ratio > 0.0))
        fail(ErrorKind::InvalidArgument, "antenna spacing must be positive");
    if (!(spec.pas.sigma > 0.0))
        fail(ErrorKind::InvalidArgument, "angle spread must be positive");
    if (!(std::abs(spec.pas.theta0) <= kPi / 2))
        fail(ErrorKind::InvalidArgument, "mean angle outside [-pi/2, pi/2]");
}

CVector steering_vector(int M, double spacing_ratio, double theta)
{
    CVector v(M);
    for (int m = 0; m < M; ++m)
        v[m] = std::polar(1.0, -2.0 * kPi * spacing_ratio * m * std::sin(theta));
    return v;
}

CovarianceModel one_ring_covariance(const ChannelSpec &spec)
{
    validate_channel_spec(spec);
    const double lo = std::max(-kPi / 2, spec.pas.theta0 - kSupportSigmas * spec.pas.sigma);
    const double hi = std::min(kPi / 2, spec.pas.theta0 + kSupportSigmas * spec.pas.sigma);

    CVector prev = covariance_column(spec, lo, hi, kInitialPanels);
    CVector r;
    bool converged = false;
    for (int panels = 2 * kInitialPanels; panels <= kMaxPanels; panels *= 2)
    {
        r = covariance_column(spec, lo, hi, panels);
        const double change = std::sqrt(toeplitz_norm2(r - prev) / toeplitz_norm2(r));
        if (change < kQuadTol)
        {
            converged = true;
            break;
        }
        prev = r;
    }
    if (!converged)
        fail(ErrorKind::Convergence, "covariance quadrature did not converge");

    CovarianceModel cov;
    cov.R.resize(spec.M, spec.M);
    for (int m = 0; m < spec.M; ++m)
        for (int n = 0; n < spec.M; ++n)
            cov.R(m, n) = (m >= n) ? r[m - n] : std::conj(r[n - m]);
    return cov;
}

double dft_domain_leakage(const CMatrix &R)
{
    const auto M = R.rows();
    if (M == 0 || R.cols() != M)
        fail(ErrorKind::Dimension, "covariance must be square and nonempty");
    // F R F^H = F (F R^H)^H, column transforms only
    CMatrix FRh(M, M);
    const CMatrix Rh = R.adjoint();
    for (Eigen::Index j = 0; j < M; ++j)
        FRh.col(j) = unitary_dft(Rh.col(j));
    const CMatrix tmp = FRh.adjoint();
    CMatrix B(M, M);
    for (Eigen::Index j = 0; j < M; ++j)
        B.col(j) = unitary_dft(tmp.col(j));

    const double total = B.squaredNorm();
    if (total == 0.0)
        return 0.0;
    const double diag = B.diagonal().squaredNorm();
    return std::clamp((total - diag) / total, 0.0, 1.0);
}

CMatrix factor_covariance(const CMatrix &R)
{
    if (R.rows() != R.cols())
        fail(ErrorKind::Dimension, "covariance must be square");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(R);
    if (es.info() != Eigen::Success)
        fail(ErrorKind::Convergence, "covariance eigendecomposition failed");
    const RVector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * d.asDiagonal();
}

CVector draw_channel(const CMatrix &A, Rng &rng)
{
    CVector w(A.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w[i] = complex_normal(rng);
    return A * w;
}

CVector effective_channel(const Precoder &p, const CVector &h)
{
    if (h.size() != p.M)
        fail(ErrorKind::Dimension, "channel length does not match the precoder");
    return p.W.adjoint() * h;
}

double precoded_covariance_deviation(const Precoder &p, const CMatrix &R)
{
    if (R.rows() != p.M || R.cols() != p.M)
        fail(ErrorKind::Dimension, "covariance size does not match the precoder");
    const CMatrix G = static_cast<double>(p.N) * (p.W.adjoint() * R * p.W);
    return (G - CMatrix::Identity(p.N, p.N)).norm();
}

} // namespace omnistbc
