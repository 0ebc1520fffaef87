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

#include <span>

#include "omnistbc/common.hpp"

namespace omnistbc
{

enum class ConstellationKind
{
    Psk,
    Pam,
    Qam,
};

/// Finite symbol alphabet with a Gray bit labelling.
///
/// Point `i` carries the bit label gray(i) = i ^ (i >> 1). PSK points run
/// counter-clockwise and PAM levels run from the most positive level down, so
/// that neighbouring points differ in one bit. Square QAM points are ordered
/// so that the label of point `i` is still gray(i), with the upper half of the
/// label Gray-coding the in-phase level and the lower half the quadrature one.
class Constellation
{
public:
    Constellation(ConstellationKind kind, int order, double rotation, double scale,
                  std::vector<cplx> points);

    ConstellationKind kind() const noexcept { return kind_; }
    int order() const noexcept { return order_; }
    double rotation() const noexcept { return rotation_; }
    double scale() const noexcept { return scale_; }
    int bit_width() const noexcept { return bit_width_; }
    const std::vector<cplx> &points() const noexcept { return points_; }
    cplx point(int index) const { return points_.at(static_cast<std::size_t>(index)); }

    /// True when every label is a distinct bit pattern (order is a power of two).
    bool has_labels() const noexcept { return (order_ & (order_ - 1)) == 0; }

    unsigned label(int index) const;
    int index_of_label(unsigned label) const;

    /// Reads bit_width() bits (MSB first) and returns the point index.
    int index_of_bits(std::span<const std::uint8_t> bits) const;
    /// Appends the bit_width() label bits of point `index` to `out`.
    void append_bits(int index, Bits &out) const;

    /// Nearest point; equal distances resolve to the lowest index.
    int slice(cplx z) const;

    Constellation rotated(double theta) const;

private:
    ConstellationKind kind_;
    int order_;
    double rotation_;
    double scale_;
    int bit_width_;
    std::vector<cplx> points_;
};

unsigned gray_encode(unsigned i);
unsigned gray_decode(unsigned g);

/// L-PSK {e^{j 2 pi l / L}}, optionally rotated by e^{j theta}.
Constellation make_psk(int L, double theta = 0.0);

/// d * {+-1, +-3, ..., +-(2 L_half - 1)} with unit mean energy.
Constellation make_pam(int L_half);

/// Unit-energy square QAM rotated by e^{j theta}.
Constellation make_rotated_qam(int order, double theta);

double qostbc_rotation(int L);
double ciod_rotation();
double min_sq_distance(const Constellation &c);

} // namespace omnistbc
