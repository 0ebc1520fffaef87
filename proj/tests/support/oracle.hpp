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

// Independent reference implementations used by the unit and acceptance tests.

#include <limits>

#include "omnistbc/codes.hpp"
#include "omnistbc/receivers.hpp"

namespace omnistbc::oracle
{

/// O(M^2) DFT straight from the definition.
inline CVector direct_dft(const CVector &v)
{
    const auto M = v.size();
    CVector out = CVector::Zero(M);
    for (Eigen::Index k = 0; k < M; ++k)
        for (Eigen::Index m = 0; m < M; ++m)
            out[k] += v[m] * std::polar(1.0, -2.0 * kPi * static_cast<double>((k * m) % M) / M);
    return out / std::sqrt(static_cast<double>(M));
}

/// Exhaustive ML over the whole codebook: argmin ||y - X^T g||^2, lowest index on ties.
inline std::size_t exhaustive_ml(const std::vector<Codeword> &book, const RxObservation &obs)
{
    std::size_t best = 0;
    double best_m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < book.size(); ++i)
    {
        const double m = (obs.y - book[i].entries.transpose() * obs.g).squaredNorm();
        if (m < best_m)
        {
            best_m = m;
            best = i;
        }
    }
    return best;
}

/// Eigenvalues of (1/N) dX dX^H through a general Hermitian eigensolver.
inline RVector pair_eigenvalues(const CMatrix &A, const CMatrix &B)
{
    const CMatrix d = A - B;
    const CMatrix G = d * d.adjoint() / static_cast<double>(d.rows());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// min over ordered pairs of det(dX dX^H)^{1/T} from eigenvalues.
inline double coding_gain_by_eigenvalues(const std::vector<Codeword> &book)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < book.size(); ++i)
        for (std::size_t j = 0; j < book.size(); ++j)
        {
            if (i == j)
                continue;
            const CMatrix d = book[i].entries - book[j].entries;
            Eigen::SelfAdjointEigenSolver<CMatrix> es(d * d.adjoint(), Eigen::EigenvaluesOnly);
            const double det = es.eigenvalues().cwiseMax(0.0).prod();
            best = std::min(best, std::pow(det, 1.0 / static_cast<double>(d.cols())));
        }
    return best;
}

/// K (4 s2)^N sum over ordered pairs of prod 1/lambda_n.
inline double pep_by_eigenvalues(const std::vector<Codeword> &book, int N, double s2, double K)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < book.size(); ++i)
        for (std::size_t j = 0; j < book.size(); ++j)
            if (i != j)
                sum += 1.0 / pair_eigenvalues(book[i].entries, book[j].entries).prod();
    return K * std::pow(4.0 * s2, N) * sum;
}

inline CVector random_channel(int N, Rng &rng)
{
    CVector g(N);
    for (Eigen::Index i = 0; i < N; ++i)
        g[i] = complex_normal(rng);
    return g;
}

} // namespace omnistbc::oracle
