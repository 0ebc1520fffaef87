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

#include "omnistbc/precoding.hpp"

#include <bitset>

namespace omnistbc
{

namespace
{

constexpr double kUnitaryTol = 1e-10;

void check_unitary(const CMatrix &V)
{
    if (V.rows() != V.cols() || V.rows() == 0)
        fail(ErrorKind::Dimension, "V must be square and nonempty");
    const double dev = (V.adjoint() * V - CMatrix::Identity(V.rows(), V.cols())).norm();
    if (dev > kUnitaryTol)
        fail(ErrorKind::InvalidArgument, "V is not unitary (deviation " + std::to_string(dev) + ")");
}

} // namespace

Precoder build_precoder_from_sequence(const CVector &c, const CMatrix &V)
{
    check_unitary(V);
    const auto M = static_cast<int>(c.size());
    const auto N = static_cast<int>(V.rows());
    if (M == 0 || M % (N * N) != 0)
        fail(ErrorKind::Dimension, "M=" + std::to_string(M) + " is not a multiple of N^2=" +
                                       std::to_string(N * N));

    Precoder p;
    p.M = M;
    p.N = N;
    p.V = V;
    p.W.resize(M, N);
    for (int m = 0; m < M; ++m)
        p.W.row(m) = c[m] * V.row(m % N);
    return p;
}

Precoder build_precoder(int M, int N, int gamma, const CMatrix &V)
{
    if (V.rows() != N)
        fail(ErrorKind::Dimension, "V is not " + std::to_string(N) + " x " + std::to_string(N));
    if (N < 1 || M < 1 || M % (N * N) != 0)
        fail(ErrorKind::Dimension, "M=" + std::to_string(M) + " is not a multiple of N^2=" +
                                       std::to_string(N * N));
    Precoder p = build_precoder_from_sequence(zc_generate(M, gamma).values, V);
    p.gamma = gamma;
    return p;
}

CVector prbs_sequence(int M)
{
    if (M < 1)
        fail(ErrorKind::InvalidArgument, "sequence length must be positive");
    std::bitset<9> reg;
    reg.set();
    CVector out(M);
    const double a = 1.0 / std::sqrt(static_cast<double>(M));
    for (int m = 0; m < M; ++m)
    {
        const bool bit = reg[8];
        const bool fb = reg[8] ^ reg[4];
        reg <<= 1;
        reg[0] = fb;
        out[m] = bit ? a : -a;
    }
    return out;
}

CMatrix hadamard2()
{
    CMatrix H(2, 2);
    H << 1, 1, 1, -1;
    return H / std::sqrt(2.0);
}

CMatrix preset_V(const CodeSpec &spec)
{
    auto kron = [](const CMatrix &A, const CMatrix &B) {
        CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            for (Eigen::Index j = 0; j < A.cols(); ++j)
                K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        return K;
    };
    switch (spec.kind)
    {
    case CodeKind::SingleStream: return CMatrix::Identity(1, 1);
    case CodeKind::Alamouti: return CMatrix::Identity(2, 2);
    case CodeKind::Ostbc: return kron(CMatrix::Identity(2, 2), hadamard2());
    case CodeKind::Qostbc: return CMatrix::Identity(4, 4);
    case CodeKind::Ciod: return kron(hadamard2(), hadamard2());
    case CodeKind::NzeTc:
    case CodeKind::NzeOac:
        if (spec.nze.ports < 1)
            fail(ErrorKind::InvalidArgument, "NZE code without ports");
        return CMatrix::Identity(spec.nze.ports, spec.nze.ports);
    }
    fail(ErrorKind::InvalidArgument, "unknown code kind");
}

CMatrix transmit(const Precoder &p, const CMatrix &X)
{
    if (X.rows() != p.N)
        fail(ErrorKind::Dimension, "codeword has " + std::to_string(X.rows()) +
                                       " ports, precoder has " + std::to_string(p.N));
    return p.W * X;
}

RequirementCheck check_requirements(const CMatrix &S, double tol)
{
    RequirementCheck r{true, true};
    for (Eigen::Index t = 0; t < S.cols(); ++t)
    {
        const CVector col = S.col(t);
        r.per_antenna = r.per_antenna && is_constant_amplitude(col, tol);
        r.omni = r.omni && is_constant_amplitude(unitary_dft(col), tol);
    }
    return r;
}

double avg_receive_power(const Precoder &p, const CVector &x, const RVector &lambda)
{
    if (lambda.size() != p.M || x.size() != p.N)
        fail(ErrorKind::Dimension, "avg_receive_power dimension mismatch");
    if ((lambda.array() < 0.0).any())
        fail(ErrorKind::InvalidArgument, "negative directional gain");
    if (std::abs(lambda.sum() - p.M) > 1e-9 * p.M)
        fail(ErrorKind::InvalidArgument, "directional gains must sum to M");
    const CVector beam = unitary_dft(p.W * x);
    return (lambda.array() * beam.array().abs2()).sum();
}

} // namespace omnistbc
