#include <benchmark/benchmark.h>

#include "dfred/telescoping.hpp"

using namespace dfred;

namespace {

const char* const kZeroIrregular = "x^3*D^2 + (3*x^2 + 2)*D";
const char* const kInfinityIrregular = "x*D^2 - (3*x^3 + 2)*D";

AmbientPtr ambient(const char* l, const CoeffField& f = CoeffField::rationals()) {
  return std::make_shared<Ambient>(parse_operator(l, f), f);
}

void BM_IntegralBases(benchmark::State& state, const char* l) {
  auto a = ambient(l);
  for (auto _ : state) {
    LocalAnalyzer an(a);
    benchmark::DoNotOptimize(compute_integral_bases(an));
  }
}
BENCHMARK_CAPTURE(BM_IntegralBases, zero_irregular, kZeroIrregular);
BENCHMARK_CAPTURE(BM_IntegralBases, infinity_irregular, kInfinityIrregular);

void BM_Decompose(benchmark::State& state) {
  auto a = ambient(kInfinityIrregular);
  LocalAnalyzer an(a);
  Decomposer dec(compute_integral_bases(an));
  // x^k w1 + w2 / x^k
  const int k = static_cast<int>(state.range(0));
  const XPoly xk = XPoly::monomial(Coeff(1), k);
  RVec f{XRat(xk), XRat(XPoly(Coeff(1)), xk)};
  for (auto _ : state) benchmark::DoNotOptimize(dec.decompose(f));
}
BENCHMARK(BM_Decompose)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TelescoperDerivation(benchmark::State& state) {
  const CoeffField f = CoeffField::with_param("t");
  auto a = ambient("D - (2*t^2*x - t^3 + 1)/(2*x - t)", f);
  LocalAnalyzer an(a);
  Decomposer dec(compute_integral_bases(an));
  auto ideal = make_ideal(a, PartialKind::kDerivation, parse_operator("(8*t*x^2 - 4*t^2*x - 1)/(2*(2*x - t))", f));
  for (auto _ : state) benchmark::DoNotOptimize(telescoper(RVec{XRat(1)}, ideal, dec));
}
BENCHMARK(BM_TelescoperDerivation)->Unit(benchmark::kMillisecond);

void BM_TelescoperShift(benchmark::State& state) {
  const CoeffField f = CoeffField::with_param("n");
  auto a = ambient("x*D^2 + (1 - 2*n)*D + x", f);
  RMatrix w{a->reduce(parse_operator("1", f)), a->reduce(parse_operator("D", f))};
  RMatrix v{a->reduce(parse_operator("1", f)), a->reduce(parse_operator("x^-1*D", f))};
  Decomposer dec(integral_bases_from_frames(frame_matrix(a, w, FrameKind::kGlobalIntegral, "w"),
                                            frame_matrix(a, v, FrameKind::kLocalAtInfinity, "v")));
  auto ideal = make_ideal(a, PartialKind::kShift, parse_operator("2*n - x*D", f));
  for (auto _ : state) benchmark::DoNotOptimize(telescoper(RVec{XRat(1), XRat(0)}, ideal, dec));
}
BENCHMARK(BM_TelescoperShift)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
