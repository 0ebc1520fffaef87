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

#include "omnistbc/receivers.hpp"

#include <limits>

namespace omnistbc
{

namespace
{

void check_obs(const RxObservation &obs, Eigen::Index N, Eigen::Index T)
{
    if (obs.g.size() != N || obs.y.size() != T)
        fail(ErrorKind::Dimension, "observation has " + std::to_string(obs.y.size()) +
                                       " samples and " + std::to_string(obs.g.size()) +
                                       " channel taps, expected " + std::to_string(T) + " and " +
                                       std::to_string(N));
    if (obs.g.squaredNorm() == 0.0)
        fail(ErrorKind::Undecodable, "effective channel is zero");
}

// argmin_i alpha |p_i|^2 - 2 Re(conj(p_i) z), lowest index on ties.
int symbol_ml(const Constellation &c, double alpha, cplx z, long &evals)
{
    int best = 0;
    double best_m = std::numeric_limits<double>::infinity();
    const auto &pts = c.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        const double m = alpha * std::norm(pts[i]) - 2.0 * std::real(std::conj(pts[i]) * z);
        if (m < best_m)
        {
            best_m = m;
            best = static_cast<int>(i);
        }
    }
    evals += static_cast<long>(pts.size());
    return best;
}

Decision decode_single(const RxObservation &obs, const Constellation &c)
{
    check_obs(obs, 1, 1);
    Decision d;
    const cplx g = obs.g[0];
    const int i = symbol_ml(c, std::norm(g), std::conj(g) * obs.y[0], d.evaluations);
    c.append_bits(i, d.bits);
    d.symbols = {c.point(i)};
    return d;
}

Decision decode_ac(const RxObservation &obs, const Constellation &c)
{
    check_obs(obs, 2, 2);
    const cplx g1 = obs.g[0], g2 = obs.g[1];
    const cplx y1 = obs.y[0], y2 = obs.y[1];
    const double alpha = std::norm(g1) + std::norm(g2);
    const cplx t1 = std::conj(g1) * y1 - g2 * std::conj(y2);
    const cplx t2 = std::conj(g2) * y1 + g1 * std::conj(y2);

    Decision d;
    const int i1 = symbol_ml(c, alpha, t1, d.evaluations);
    const int i2 = symbol_ml(c, alpha, t2, d.evaluations);
    c.append_bits(i1, d.bits);
    c.append_bits(i2, d.bits);
    d.symbols = {c.point(i1), c.point(i2)};
    return d;
}

Decision decode_ostbc(const RxObservation &obs, const Constellation &pam, const Constellation &qpsk)
{
    check_obs(obs, 4, 4);
    const cplx g1 = obs.g[0], g2 = obs.g[1], g3 = obs.g[2], g4 = obs.g[3];
    const cplx y1 = obs.y[0], y2 = obs.y[1], y3 = obs.y[2], y4 = obs.y[3];
    const cplx y1c = std::conj(y1), y2c = std::conj(y2), y3c = std::conj(y3), y4c = std::conj(y4);
    const double alpha = obs.g.squaredNorm();

    Decision d;

    // step 1: x3' maximises f(x3') = Re(x3' u3)
    const cplx u3 = g3 * y1c + g4 * y2c + std::conj(g1) * y3 + std::conj(g2) * y4;
    int i3 = 0;
    double f_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < qpsk.order(); ++i)
    {
        const double f = std::real(qpsk.points()[static_cast<std::size_t>(i)] * u3);
        if (f > f_max)
        {
            f_max = f;
            i3 = i;
        }
    }
    d.evaluations += qpsk.order();

    // step 2: joint (x1, x2) search with the |x1 + x2| coupling
    const cplx p1 = g1 * y1c + g4 * y4c;
    const cplx q1 = g2 * y2c + g3 * y3c;
    const cplx p2 = g2 * y1c - g4 * y3c;
    const cplx q2 = g1 * y2c - g3 * y4c;
    const auto &pts = pam.points();
    const int n = pam.order();
    int best1 = 0, best2 = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i1 = 0; i1 < n; ++i1)
    {
        const cplx x1 = pts[static_cast<std::size_t>(i1)];
        const double m1 = alpha * std::norm(x1) - 2.0 * std::real(x1 * p1 - std::conj(x1) * q1);
        for (int i2 = 0; i2 < n; ++i2)
        {
            const cplx x2 = kJ * pts[static_cast<std::size_t>(i2)];
            const double s = std::abs(x1 + x2);
            const double m = m1 + alpha * (std::norm(x2) + s * s) -
                             2.0 * std::real(x2 * p2 + std::conj(x2) * q2) - 2.0 * s * f_max;
            if (m < best)
            {
                best = m;
                best1 = i1;
                best2 = i2;
            }
        }
    }
    d.evaluations += static_cast<long>(n) * n;

    pam.append_bits(best1, d.bits);
    pam.append_bits(best2, d.bits);
    qpsk.append_bits(i3, d.bits);
    d.symbols = {pam.point(best1), kJ * pam.point(best2), qpsk.point(i3)};
    return d;
}

// argmin over (xa, xb) in A x B of Gaa|xa|^2 + Gbb|xb|^2 + 2 Re(conj(xa) Gab xb) - 2 Re(conj(xa) za + conj(xb) zb)
std::pair<int, int> pair_ml(const Constellation &A, const Constellation &B, double Gaa, double Gbb,
                            cplx Gab, cplx za, cplx zb, long &evals)
{
    const auto &pts = A.points();
    const auto &qts = B.points();
    std::pair<int, int> best{0, 0};
    double best_m = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < pts.size(); ++a)
    {
        const cplx xa = pts[a];
        const double ma = Gaa * std::norm(xa) - 2.0 * std::real(std::conj(xa) * za);
        const cplx ca = std::conj(xa) * Gab;
        for (std::size_t b = 0; b < qts.size(); ++b)
        {
            const cplx xb = qts[b];
            const double m = ma + Gbb * std::norm(xb) + 2.0 * std::real(ca * xb) -
                             2.0 * std::real(std::conj(xb) * zb);
            if (m < best_m)
            {
                best_m = m;
                best = {static_cast<int>(a), static_cast<int>(b)};
            }
        }
    }
    evals += static_cast<long>(pts.size() * qts.size());
    return best;
}

Decision decode_qostbc(const RxObservation &obs, const Constellation &S, const Constellation &Sr)
{
    check_obs(obs, 4, 4);
    const cplx g1 = obs.g[0], g2 = obs.g[1], g3 = obs.g[2], g4 = obs.g[3];
    // [y1, y2*, y3, y4*] = H [x1, x2, x3, x4]
    Eigen::Matrix4cd H;
    H << g1, g2, g3, g4,
         -std::conj(g2), std::conj(g1), -std::conj(g4), std::conj(g3),
         g3, g4, g1, g2,
         -std::conj(g4), std::conj(g3), -std::conj(g2), std::conj(g1);
    Eigen::Vector4cd yt;
    yt << obs.y[0], std::conj(obs.y[1]), obs.y[2], std::conj(obs.y[3]);
    const Eigen::Matrix4cd G = H.adjoint() * H;
    const Eigen::Vector4cd z = H.adjoint() * yt;

    Decision d;
    const auto [i1, i3] =
        pair_ml(S, Sr, G(0, 0).real(), G(2, 2).real(), G(0, 2), z[0], z[2], d.evaluations);
    const auto [i2, i4] =
        pair_ml(S, Sr, G(1, 1).real(), G(3, 3).real(), G(1, 3), z[1], z[3], d.evaluations);
    S.append_bits(i1, d.bits);
    S.append_bits(i2, d.bits);
    Sr.append_bits(i3, d.bits);
    Sr.append_bits(i4, d.bits);
    d.symbols = {S.point(i1), S.point(i2), Sr.point(i3), Sr.point(i4)};
    return d;
}

Decision decode_ciod(const RxObservation &obs, const Constellation &qam)
{
    check_obs(obs, 4, 4);
    const cplx g1 = obs.g[0], g2 = obs.g[1], g3 = obs.g[2], g4 = obs.g[3];
    const cplx y1 = obs.y[0], y2 = obs.y[1], y3 = obs.y[2], y4 = obs.y[3];
    const double a12 = std::norm(g1) + std::norm(g2);
    const double a34 = std::norm(g3) + std::norm(g4);
    const cplx t1 = std::conj(g1) * y1 - g2 * std::conj(y2);
    const cplx t2 = std::conj(g2) * y1 + g1 * std::conj(y2);
    const cplx t3 = std::conj(g3) * y3 - g4 * std::conj(y4);
    const cplx t4 = std::conj(g4) * y3 + g3 * std::conj(y4);

    const auto &pts = qam.points();
    auto search = [&](bool first) {
        int best = 0;
        double best_m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts.size(); ++i)
        {
            // s1 drives (x1, x3), s2 drives (x2, x4)
            const auto x = first ? ciod_interleave(pts[i], 0.0) : ciod_interleave(0.0, pts[i]);
            const cplx xa = first ? x[0] : x[1];
            const cplx xb = first ? x[2] : x[3];
            const cplx ta = first ? t1 : t2;
            const cplx tb = first ? t3 : t4;
            const double m = a12 * std::norm(xa) - 2.0 * std::real(std::conj(xa) * ta) +
                             a34 * std::norm(xb) - 2.0 * std::real(std::conj(xb) * tb);
            if (m < best_m)
            {
                best_m = m;
                best = static_cast<int>(i);
            }
        }
        return best;
    };

    Decision d;
    const int i1 = search(true);
    const int i2 = search(false);
    d.evaluations = 2L * qam.order();
    qam.append_bits(i1, d.bits);
    qam.append_bits(i2, d.bits);
    d.symbols = {qam.point(i1), qam.point(i2)};
    return d;
}

CMatrix nze_matrix(const CodeSpec &spec, const CVector &x)
{
    return spec.kind == CodeKind::NzeTc ? nze_tc_matrix(x, spec.nze.ports)
                                        : nze_oac_matrix(x, spec.nze.ports);
}

} // namespace

CVector receive(const CMatrix &X, const CVector &g)
{
    if (X.rows() != g.size())
        fail(ErrorKind::Dimension, "codeword ports do not match the channel");
    return X.transpose() * g;
}

CVector add_awgn(const CVector &clean, double sigma_n2, Rng &rng)
{
    if (!(sigma_n2 >= 0.0))
        fail(ErrorKind::InvalidArgument, "noise variance must be nonnegative");
    CVector out = clean;
    if (sigma_n2 == 0.0)
        return out;
    const double s = std::sqrt(sigma_n2);
    for (Eigen::Index t = 0; t < out.size(); ++t)
        out[t] += s * complex_normal(rng);
    return out;
}

Decision ml_decode_single(const RxObservation &obs, const Constellation &c)
{
    return decode_single(obs, c);
}

Decision ml_decode_ac(const RxObservation &obs, const Constellation &c)
{
    return decode_ac(obs, c);
}

Decision ml_decode_ostbc(const RxObservation &obs, int R)
{
    const auto a = ostbc_alphabets(R);
    return decode_ostbc(obs, a.pam, a.qpsk);
}

Decision ml_decode_qostbc(const RxObservation &obs, int R)
{
    const auto a = qostbc_alphabets(R);
    return decode_qostbc(obs, a.first, a.second);
}

Decision ml_decode_ciod(const RxObservation &obs, int R)
{
    return decode_ciod(obs, ciod_alphabet(R));
}

Decision zf_decode_nze(const RxObservation &obs, const CodeSpec &spec)
{
    return ZfDecoder(spec).decode(obs);
}

ZfDecoder::ZfDecoder(const CodeSpec &spec) : spec_(spec), psk_(psk_alphabet(spec))
{
    if (spec.kind != CodeKind::NzeTc && spec.kind != CodeKind::NzeOac)
        fail(ErrorKind::InvalidArgument, "zero-forcing receiver is only defined for NZE codes");
    validate_code_spec(spec);
    const int L = spec.nze.symbols;
    for (int i = 0; i < L; ++i)
    {
        CVector e = CVector::Zero(L);
        e[i] = 1.0;
        re_basis_.push_back(nze_matrix(spec, e));
        e[i] = kJ;
        im_basis_.push_back(nze_matrix(spec, e));
    }
}

Decision ZfDecoder::decode(const RxObservation &obs) const
{
    const int L = spec_.nze.symbols;
    const int T = spec_.slots();
    if (obs.g.size() != spec_.ports() || obs.y.size() != T)
        fail(ErrorKind::Dimension, "observation does not match the NZE code dimensions");

    Eigen::MatrixXd A(2 * T, 2 * L);
    for (int i = 0; i < L; ++i)
    {
        const CVector cr = re_basis_[static_cast<std::size_t>(i)].transpose() * obs.g;
        const CVector ci = im_basis_[static_cast<std::size_t>(i)].transpose() * obs.g;
        A.col(2 * i) << cr.real(), cr.imag();
        A.col(2 * i + 1) << ci.real(), ci.imag();
    }
    Eigen::VectorXd b(2 * T);
    b << obs.y.real(), obs.y.imag();

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 2 * L)
        fail(ErrorKind::RankDeficient, "zero-forcing system has rank " + std::to_string(qr.rank()) +
                                           " < " + std::to_string(2 * L));
    const Eigen::VectorXd u = qr.solve(b);

    Decision d;
    d.symbols.reserve(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i)
    {
        const int k = psk_.slice({u[2 * i], u[2 * i + 1]});
        psk_.append_bits(k, d.bits);
        d.symbols.push_back(psk_.point(k));
    }
    d.evaluations = static_cast<long>(L) * psk_.order();
    return d;
}

Decoder::Decoder(const CodeSpec &spec) : spec_(spec)
{
    validate_code_spec(spec_);
    switch (spec_.kind)
    {
    case CodeKind::Ostbc: {
        auto a = ostbc_alphabets(spec_.rate);
        alphabets_ = {a.pam, a.qpsk};
        break;
    }
    case CodeKind::Qostbc: {
        auto a = qostbc_alphabets(spec_.rate);
        alphabets_ = {a.first, a.second};
        break;
    }
    case CodeKind::Ciod: alphabets_ = {ciod_alphabet(spec_.rate)}; break;
    case CodeKind::NzeTc:
    case CodeKind::NzeOac: zf_.emplace(spec_); break;
    default: alphabets_ = {psk_alphabet(spec_)}; break;
    }
}

Decision Decoder::decode(const RxObservation &obs) const
{
    switch (spec_.kind)
    {
    case CodeKind::SingleStream: return decode_single(obs, alphabets_[0]);
    case CodeKind::Alamouti: return decode_ac(obs, alphabets_[0]);
    case CodeKind::Ostbc: return decode_ostbc(obs, alphabets_[0], alphabets_[1]);
    case CodeKind::Qostbc: return decode_qostbc(obs, alphabets_[0], alphabets_[1]);
    case CodeKind::Ciod: return decode_ciod(obs, alphabets_[0]);
    case CodeKind::NzeTc:
    case CodeKind::NzeOac: return zf_->decode(obs);
    }
    fail(ErrorKind::InvalidArgument, "unknown code kind");
}

} // namespace omnistbc
