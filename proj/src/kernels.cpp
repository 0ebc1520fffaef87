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

#include "omnistbc/kernels.hpp"

#include <limits>

#include <omp.h>

namespace omnistbc::kernels
{

namespace
{

constexpr double kRankTol = 1e-10;

struct Acc
{
    std::uint64_t pairs = 0;
    double min_det = std::numeric_limits<double>::infinity();
    std::uint64_t min_i = 0, min_j = 0;
    bool bad = false;
    std::uint64_t bad_i = 0, bad_j = 0;
    double inv_sum = 0.0;

    void visit(double det, double scale, std::uint64_t i, std::uint64_t j)
    {
        ++pairs;
        if (det < min_det)
        {
            min_det = det;
            min_i = i;
            min_j = j;
        }
        if (det <= kRankTol * scale)
        {
            if (!bad)
            {
                bad = true;
                bad_i = i;
                bad_j = j;
            }
        }
        else
            inv_sum += 1.0 / det;
    }

    // pairs are visited in lexicographic order within one accumulator, so
    // lexicographic comparison keeps the serial answer
    void merge(const Acc &o)
    {
        pairs += o.pairs;
        if (o.min_det < min_det ||
            (o.min_det == min_det && std::pair(o.min_i, o.min_j) < std::pair(min_i, min_j)))
        {
            min_det = o.min_det;
            min_i = o.min_i;
            min_j = o.min_j;
        }
        if (o.bad && (!bad || std::pair(o.bad_i, o.bad_j) < std::pair(bad_i, bad_j)))
        {
            bad = true;
            bad_i = o.bad_i;
            bad_j = o.bad_j;
        }
        inv_sum += o.inv_sum;
    }
};

PairScan finish(const Acc &a)
{
    PairScan s;
    s.pairs = a.pairs;
    s.min_det = a.min_det;
    s.min_i = a.min_i;
    s.min_j = a.min_j;
    s.rank_deficient = a.bad;
    s.bad_i = a.bad_i;
    s.bad_j = a.bad_j;
    s.inv_det_sum = a.inv_sum;
    return s;
}

template <class Mat, class Load, class Det>
PairScan scan_impl(std::size_t n, Load load, Det det, Exec exec)
{
    std::vector<Mat, Eigen::aligned_allocator<Mat>> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = load(i);

    auto row = [&](Acc &acc, std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            const Mat d = v[i] - v[j];
            const auto [value, scale] = det(d);
            acc.visit(value, scale, i, j);
        }
    };

    Acc total;
    if (exec == Exec::Serial)
    {
        for (std::size_t i = 0; i < n; ++i)
            row(total, i);
        return finish(total);
    }

    const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel
    {
        Acc local;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < rows; ++i)
            row(local, static_cast<std::size_t>(i));
#pragma omp critical(omnistbc_pair_merge)
        total.merge(local);
    }
    return finish(total);
}

// det(D D^H) together with (tr(D D^H) / N)^N, the scale used by the rank test.
template <class Mat>
std::pair<double, double> det_and_scale(const Mat &d)
{
    const auto G = (d * d.adjoint()).eval();
    const double n = static_cast<double>(G.rows());
    const double tr = G.trace().real() / n;
    return {G.determinant().real(), std::pow(tr, n)};
}

template <int N, int T>
PairScan scan_fixed(const std::vector<CMatrix> &book, Exec exec)
{
    using Mat = Eigen::Matrix<cplx, N, T>;
    return scan_impl<Mat>(
        book.size(), [&](std::size_t i) { return Mat(book[i]); },
        [](const Mat &d) { return det_and_scale(d); }, exec);
}

} // namespace

double gram_det(const CMatrix &A)
{
    if (A.rows() == 0)
        fail(ErrorKind::Dimension, "empty matrix");
    if (A.rows() > A.cols())
        return 0.0;
    const CMatrix G = A * A.adjoint();
    if (G.rows() <= 4)
        return G.determinant().real();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
    return es.eigenvalues().prod();
}

PairScan scan_pairs(const std::vector<CMatrix> &codebook, Exec exec)
{
    if (codebook.size() < 2)
        fail(ErrorKind::InvalidArgument, "pair scan needs at least two codewords");
    const auto N = codebook.front().rows();
    const auto T = codebook.front().cols();
    for (const auto &X : codebook)
        if (X.rows() != N || X.cols() != T)
            fail(ErrorKind::Dimension, "codewords differ in size");

    if (N == 1 && T == 1)
        return scan_fixed<1, 1>(codebook, exec);
    if (N == 2 && T == 2)
        return scan_fixed<2, 2>(codebook, exec);
    if (N == 4 && T == 4)
        return scan_fixed<4, 4>(codebook, exec);
    return scan_impl<CMatrix>(
        codebook.size(), [&](std::size_t i) { return codebook[i]; },
        [](const CMatrix &d) {
            const double n = static_cast<double>(d.rows());
            const double tr = d.squaredNorm() / n;
            return std::pair{gram_det(d), std::pow(tr, n)};
        },
        exec);
}

} // namespace omnistbc::kernels
