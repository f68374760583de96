// Copyright 2026 The qrdet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "qrdet/cyclotomic.hpp"
#include "qrdet/exactlin.hpp"
#include "qrdet/qmatrix.hpp"

using namespace qrdet;

namespace {

exactlin::IntMatrix random_int(std::size_t n, int bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-bound, bound);
    exactlin::IntMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = d(rng);
    return m;
}

qmatrix::MatrixSpec legendre_full(std::uint64_t p) {
    qmatrix::MatrixSpec s;
    s.p = p;
    s.range = qmatrix::Range::FULL;
    return s;
}

void BM_DetMod(benchmark::State& st) {
    const auto p = static_cast<std::uint64_t>(st.range(0));
    const auto m = qmatrix::build_mod(legendre_full(p), 2305843009213693951ull);
    for (auto _ : st) benchmark::DoNotOptimize(exactlin::det_mod(m));
}
BENCHMARK(BM_DetMod)->Arg(101)->Arg(401)->Arg(997);

void BM_Pfaffian(benchmark::State& st) {
    qmatrix::MatrixSpec s;
    s.family = qmatrix::Family::SKEW_D;
    s.p = static_cast<std::uint64_t>(st.range(0));
    const auto m = qmatrix::build_mod(s);
    for (auto _ : st) benchmark::DoNotOptimize(exactlin::pfaffian_mod(m));
}
BENCHMARK(BM_Pfaffian)->Arg(101)->Arg(401)->Arg(997);

void BM_Bareiss(benchmark::State& st) {
    const auto m = qmatrix::build_int(legendre_full(static_cast<std::uint64_t>(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(exactlin::det_exact(m));
}
BENCHMARK(BM_Bareiss)->Arg(61)->Arg(97)->Unit(benchmark::kMillisecond);

void BM_Multimodular(benchmark::State& st) {
    const auto m = qmatrix::build_int(legendre_full(static_cast<std::uint64_t>(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(exactlin::det_multimodular(m));
}
BENCHMARK(BM_Multimodular)->Arg(61)->Arg(97)->Unit(benchmark::kMillisecond);

void BM_BareissRandom(benchmark::State& st) {
    const auto m = random_int(static_cast<std::size_t>(st.range(0)), 1000, 7);
    for (auto _ : st) benchmark::DoNotOptimize(exactlin::det_exact(m));
}
BENCHMARK(BM_BareissRandom)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_RyserMod(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto m = exactlin::ModMatrix::reduce(random_int(n, 1000, 11), 1000003);
    for (auto _ : st) benchmark::DoNotOptimize(exactlin::permanent_ryser(m));
}
BENCHMARK(BM_RyserMod)->Arg(12)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_CycloMul(benchmark::State& st) {
    const auto p = static_cast<std::uint64_t>(st.range(0));
    cyclo::CycloElt x(p, mpq_class(0)), y(p, mpq_class(0));
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(p); ++r) {
        x += cyclo::CycloElt::zeta_pow(p, r) * mpq_class(r + 1, 3);
        y += cyclo::CycloElt::zeta_pow(p, 2 * r) * mpq_class(2 * r - 5, 7);
    }
    for (auto _ : st) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_CycloMul)->Arg(19)->Arg(31);

}  // namespace

BENCHMARK_MAIN();
