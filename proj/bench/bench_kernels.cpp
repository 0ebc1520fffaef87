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

#include <benchmark/benchmark.h>

#include "omnistbc/harness.hpp"
#include "omnistbc/kernels.hpp"

using namespace omnistbc;

namespace
{

std::vector<CMatrix> book_of(CodeKind kind, int rate)
{
    CodeSpec s;
    s.kind = kind;
    s.rate = rate;
    std::vector<CMatrix> out;
    for (const auto &cw : enumerate_codebook(s))
        out.push_back(cw.entries);
    return out;
}

SimConfig bench_config(const char *code)
{
    return parse_config(std::string("code = ") + code + "\nrate = 1\nm = 64\nsnr_db = 10\nmaster_seed = 3\n");
}

void BM_ScanPairs(benchmark::State &state, kernels::Exec exec)
{
    const auto book = book_of(CodeKind::Qostbc, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::scan_pairs(book, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(book.size() * (book.size() - 1) / 2));
}

void BM_RunTrials(benchmark::State &state, const char *code, kernels::Exec exec)
{
    const auto cfg = bench_config(code);
    const LinkContext ctx(cfg, 0.0);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    // at least two threads so the parallel path is taken even on one core
    const int workers = exec == kernels::Exec::Parallel ? std::max(2, resolve_workers(cfg, std::nullopt)) : 1;
    std::uint64_t first = 0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(kernels::run_trials(ctx, 10.0, first, n, exec, workers));
        first += n;
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK_CAPTURE(BM_ScanPairs, serial, kernels::Exec::Serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ScanPairs, parallel, kernels::Exec::Parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunTrials, ac_serial, "ac", kernels::Exec::Serial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunTrials, ac_parallel, "ac", kernels::Exec::Parallel)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunTrials, qostbc_serial, "qostbc", kernels::Exec::Serial)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunTrials, qostbc_parallel, "qostbc", kernels::Exec::Parallel)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
