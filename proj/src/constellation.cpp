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

#include "omnistbc/constellation.hpp"

#include <bit>
#include <limits>

namespace omnistbc
{

unsigned gray_encode(unsigned i)
{
    return i ^ (i >> 1);
}

unsigned gray_decode(unsigned g)
{
    unsigned i = g;
    for (unsigned shift = g >> 1; shift != 0; shift >>= 1)
        i ^= shift;
    return i;
}

Constellation::Constellation(ConstellationKind kind, int order, double rotation, double scale,
                             std::vector<cplx> points)
    : kind_(kind), order_(order), rotation_(rotation), scale_(scale),
      bit_width_(order > 1 ? std::bit_width(static_cast<unsigned>(order)) - 1 : 0),
      points_(std::move(points))
{
    if (static_cast<int>(points_.size()) != order_)
        fail(ErrorKind::InvalidArgument, "constellation point count does not match its order");
}

unsigned Constellation::label(int index) const
{
    if (index < 0 || index >= order_)
        fail(ErrorKind::InvalidArgument, "constellation index out of range");
    return gray_encode(static_cast<unsigned>(index));
}

int Constellation::index_of_label(unsigned label) const
{
    if (!has_labels() || label >= static_cast<unsigned>(order_))
        fail(ErrorKind::InvalidArgument, "label outside the constellation");
    return static_cast<int>(gray_decode(label));
}

int Constellation::index_of_bits(std::span<const std::uint8_t> bits) const
{
    if (static_cast<int>(bits.size()) < bit_width_)
        fail(ErrorKind::InvalidArgument, "not enough bits for one symbol");
    unsigned label = 0;
    for (int b = 0; b < bit_width_; ++b)
        label = (label << 1) | (bits[static_cast<std::size_t>(b)] & 1u);
    return index_of_label(label);
}

void Constellation::append_bits(int index, Bits &out) const
{
    const unsigned l = label(index);
    for (int b = bit_width_ - 1; b >= 0; --b)
        out.push_back(static_cast<std::uint8_t>((l >> b) & 1u));
}

int Constellation::slice(cplx z) const
{
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < order_; ++i)
    {
        const double d = std::norm(z - points_[static_cast<std::size_t>(i)]);
        if (d < best_d)
        {
            best_d = d;
            best = i;
        }
    }
    return best;
}

Constellation Constellation::rotated(double theta) const
{
    std::vector<cplx> pts = points_;
    const cplx r = std::polar(1.0, theta);
    for (auto &p : pts)
        p *= r;
    return Constellation(kind_, order_, rotation_ + theta, scale_, std::move(pts));
}

Constellation make_psk(int L, double theta)
{
    if (L < 2)
        fail(ErrorKind::InvalidArgument, "PSK order must be at least 2");
    std::vector<cplx> pts(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l)
    {
        // exact points at multiples of pi/2 keep BPSK/QPSK free of 1e-16 residue
        cplx p;
        if ((4 * l) % L == 0)
        {
            constexpr cplx quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            p = quarter[(4 * l) / L];
        }
        else
            p = std::polar(1.0, 2.0 * kPi * l / L);
        pts[static_cast<std::size_t>(l)] = p * std::polar(1.0, theta);
    }
    return Constellation(ConstellationKind::Psk, L, theta, 1.0, std::move(pts));
}

namespace
{

// Gray-ordered PAM amplitudes (2 levels - 1 - 2 i) for i = 0..levels-1, unscaled.
double pam_level(int index, int levels)
{
    return static_cast<double>(levels - 1 - 2 * index);
}

} // namespace

Constellation make_pam(int L_half)
{
    if (L_half < 1)
        fail(ErrorKind::InvalidArgument, "PAM half order must be positive");
    const int levels = 2 * L_half;
    // mean of (2i-1)^2 over i = 1..L_half is (4 L_half^2 - 1) / 3
    const double d = std::sqrt(3.0 / (4.0 * L_half * L_half - 1.0));
    std::vector<cplx> pts(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i)
        pts[static_cast<std::size_t>(i)] = d * pam_level(i, levels);
    return Constellation(ConstellationKind::Pam, levels, 0.0, d, std::move(pts));
}

Constellation make_rotated_qam(int order, double theta)
{
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
    if (order < 4 || side * side != order || (side & (side - 1)) != 0)
        fail(ErrorKind::InvalidArgument, "QAM order must be an even power of two");

    const int half_bits = std::bit_width(static_cast<unsigned>(side)) - 1;
    const double d = std::sqrt(3.0 / (2.0 * (order - 1)));
    const cplx rot = std::polar(1.0, theta);

    std::vector<cplx> pts(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i)
    {
        const unsigned lab = gray_encode(static_cast<unsigned>(i));
        const unsigned li = lab >> half_bits;
        const unsigned lq = lab & ((1u << half_bits) - 1u);
        const double re = pam_level(static_cast<int>(gray_decode(li)), side);
        const double im = pam_level(static_cast<int>(gray_decode(lq)), side);
        pts[static_cast<std::size_t>(i)] = d * cplx(re, im) * rot;
    }
    return Constellation(ConstellationKind::Qam, order, theta, d, std::move(pts));
}

double qostbc_rotation(int L)
{
    if (L < 2)
        fail(ErrorKind::InvalidArgument, "PSK order must be at least 2");
    return (L % 2 == 0) ? kPi / L : kPi / (2.0 * L);
}

double ciod_rotation()
{
    return std::atan(2.0) / 2.0;
}

double min_sq_distance(const Constellation &c)
{
    const auto &p = c.points();
    if (p.size() < 2)
        fail(ErrorKind::InvalidArgument, "minimum distance needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            best = std::min(best, std::norm(p[i] - p[j]));
    return best;
}

} // namespace omnistbc
