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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace omnistbc
{

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// One bit per element (0 or 1), most significant bit of each symbol first.
using Bits = std::vector<std::uint8_t>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kJ{0.0, 1.0};

enum class ErrorKind
{
    InvalidArgument,
    InvalidRoot,
    Dimension,
    ConstraintViolation,
    Undecodable,
    RankDeficient,
    Convergence,
    CapExceeded,
    Config,
    Io,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message)
{
    throw Error(kind, message);
}

inline double db_to_noise_variance(double snr_db)
{
    return std::pow(10.0, -snr_db / 10.0);
}

} // namespace omnistbc
