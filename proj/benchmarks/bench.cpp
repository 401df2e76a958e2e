#include <benchmark/benchmark.h>

#include "kocalc/abelian.hpp"
#include "kocalc/ahss.hpp"
#include "kocalc/genus.hpp"
#include "kocalc/integrality.hpp"
#include "kocalc/presentation.hpp"

namespace {

using namespace kocalc;

void BM_PontrjaginCharacter(benchmark::State& state) {
    unsigned degree = unsigned(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pontrjagin_character(degree, Rational(0)));
}
BENCHMARK(BM_PontrjaginCharacter)->Arg(24)->Arg(48);

void BM_AHatInverse(benchmark::State& state) {
    unsigned degree = unsigned(state.range(0));
    for (auto _ : state) {
        GradedPolynomial a = a_hat(degree);
        benchmark::DoNotOptimize(invert_unit(a, degree));
    }
}
BENCHMARK(BM_AHatInverse)->Arg(16)->Arg(24);

void BM_ThomGenusIdentity(benchmark::State& state) {
    unsigned pairs = unsigned(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_thom_genus_identity(pairs, 4 * pairs));
}
BENCHMARK(BM_ThomGenusIdentity)->Arg(2)->Arg(4);

void BM_SmithNormalForm(benchmark::State& state) {
    size_t n = size_t(state.range(0));
    IntMat m(n, n);
    long long v = 3;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            v = (v * 1103515245 + 12345) % 19;
            m.at(i, j) = v - 9;
        }
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(6)->Arg(12);

void BM_SphereAHSS(benchmark::State& state) {
    unsigned n = unsigned(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ko_of_sphere(n));
}
BENCHMARK(BM_SphereAHSS)->Arg(8)->Arg(32);

void BM_ProjectiveSpacePages(benchmark::State& state) {
    CohomologyPresentation rp = builtin::real_projective(unsigned(state.range(0)));
    for (auto _ : state) {
        Page page = run_to(e2_topological(rp, -14, 8), 7);
        benchmark::DoNotOptimize(page);
    }
}
BENCHMARK(BM_ProjectiveSpacePages)->Arg(4)->Arg(6);

void BM_DenominatorTable(benchmark::State& state) {
    for (auto _ : state)
        for (unsigned k = 1; k <= 12; ++k) benchmark::DoNotOptimize(ph_denominator(k));
}
BENCHMARK(BM_DenominatorTable);

}  // namespace

BENCHMARK_MAIN();
