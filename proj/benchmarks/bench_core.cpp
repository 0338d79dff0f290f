#include <benchmark/benchmark.h>

#include "iitaka/bott.hpp"
#include "iitaka/bundles.hpp"
#include "iitaka/gallery.hpp"
#include "iitaka/kodaira.hpp"

using namespace iitaka;

namespace {

CurveModel sampling_curve() { return CurveModel::elliptic(Rational(-16), Rational(16)); }

SplitBundle torsion_bundle() {
    CurveModel m = CurveModel::elliptic(Rational(-1), Rational(0));
    CurvePoint o = CurvePoint::elliptic_origin(m);
    CurvePoint p = CurvePoint::elliptic_affine(m, Rational(0), Rational(0));
    return SplitBundle(m, {Divisor::zero(m), Divisor::from_points(m, {{p, 1}, {o, -1}})});
}

void BM_RiemannRochSpace(benchmark::State& state) {
    CurveModel m = sampling_curve();
    CurvePoint o = CurvePoint::elliptic_origin(m);
    int deg = static_cast<int>(state.range(0));
    for (auto _ : state) {
        SectionBasis b = rr_space(Divisor::from_points(m, {{o, deg}}));
        benchmark::DoNotOptimize(b.dim());
    }
}
BENCHMARK(BM_RiemannRochSpace)->Arg(2)->Arg(4)->Arg(8);

void BM_ClassifyTorsion(benchmark::State& state) {
    SplitBundle e = torsion_bundle();
    DivisorClass a = default_ample(e.model());
    for (auto _ : state) {
        PositivityVerdict v = classify(e, a, {static_cast<int>(state.range(0)), 4});
        benchmark::DoNotOptimize(v.nef);
    }
}
BENCHMARK(BM_ClassifyTorsion)->Arg(4)->Arg(8);

void BM_BottTable(benchmark::State& state) {
    for (auto _ : state) {
        for (long a1 = -4; a1 <= 4; ++a1)
            for (long a2 = -4; a2 <= a1; ++a2)
                for (long b = -4; b <= 4; ++b)
                    benchmark::DoNotOptimize(bott_cohomology(BottWeight(2, {a1, a2}, b)));
    }
}
BENCHMARK(BM_BottTable);

void BM_FiberDegreeP1(benchmark::State& state) {
    CurveModel p1 = CurveModel::projective_line();
    SplitBundle e(p1, {Divisor::of_degree(p1, 1), Divisor::of_degree(p1, 2)});
    CurvePoint x0 = CurvePoint::p1_affine(p1, Rational(2));
    for (auto _ : state) benchmark::DoNotOptimize(fiber_degree(e, 1, x0));
}
BENCHMARK(BM_FiberDegreeP1);

void BM_DoubleCoverReport(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(double_cover_kodaira_report(3, 5, 17));
}
BENCHMARK(BM_DoubleCoverReport);

}  // namespace

BENCHMARK_MAIN();
