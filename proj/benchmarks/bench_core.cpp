// Timings for the hot paths: normal ordering, star products per twist kind,
// reduction modulo the quadric and the twisted metric.

#include "twistcalc/geometry.hpp"
#include "twistcalc/quadrics.hpp"

#include <benchmark/benchmark.h>

using namespace twistcalc;

namespace {

Element sample(int n, int k) {
    // (x1 + x2 + x3)^k d1 xi2
    Element s = Element::x(n, 0) + Element::x(n, 1) + Element::x(n, 2);
    return power(s, k) * Element::d(n, 0) * Element::xi(n, 1);
}

void BM_NormalOrder(benchmark::State& st) {
    const int k = static_cast<int>(st.range(0));
    Element a = power(Element::d(3, 0) + Element::d(3, 1), k);
    Element b = power(Element::x(3, 0) + Element::x(3, 1), k);
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_NormalOrder)->DenseRange(1, 4);

void BM_Star(benchmark::State& st, const char* family, const char* twist) {
    auto fam = build_family(family);
    Twist T = build_twist(fam, resolve_twist_id(fam, twist));
    const int k = static_cast<int>(st.range(0));
    Element a = sample(3, k), b = power(Element::x(3, 2) + Element::d(3, 2), k);
    for (auto _ : st) benchmark::DoNotOptimize(star(T, a, b));
}
BENCHMARK_CAPTURE(BM_Star, abelian, "b", "abelian")->DenseRange(1, 3);
BENCHMARK_CAPTURE(BM_Star, killing, "c", "killing")->DenseRange(1, 3);
BENCHMARK_CAPTURE(BM_Star, jordanian, "d", "jordanian")->DenseRange(1, 3);
BENCHMARK_CAPTURE(BM_Star, dilation, "h", "dilation")->DenseRange(1, 3);

void BM_ReduceModIdeal(benchmark::State& st) {
    auto fam = build_family("fgh");
    Element h = power(Element::x(3, 0) + Element::x(3, 1) + Element::x(3, 2) + Element(3, Scalar(1)),
                      static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reduce_mod_ideal(fam, h));
}
BENCHMARK(BM_ReduceModIdeal)->DenseRange(2, 8, 2);

void BM_TwistedMetric(benchmark::State& st) {
    auto fam = build_family("fgh", {{"a", Rational(1)}, {"b", Rational(1)}, {"c", Rational(1)}});
    Twist T = build_twist(fam, resolve_twist_id(fam, "jordanian"));
    Metric m = chart_metric(fam);
    Element X = fam.gens.get("Ep").to_element(), Y = fam.gens.get("H").to_element();
    for (auto _ : st) benchmark::DoNotOptimize(g_star(m, T, X, Y));
}
BENCHMARK(BM_TwistedMetric);

void BM_HyperboloidReport(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(hyperboloid_report(Rational(1)));
}
BENCHMARK(BM_HyperboloidReport)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
