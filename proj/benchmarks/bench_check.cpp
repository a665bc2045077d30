#include <benchmark/benchmark.h>

#include <string>

#include "xpl/ctl.hpp"
#include "xpl/logic.hpp"
#include "xpl/metrics.hpp"
#include "xpl/network.hpp"

namespace {

// Directed chain v0 -> ... -> v<n-1>; <p>1</p> only at the last node.
xpl::net::Network chain(std::size_t n, bool directed = true) {
  std::string text = directed ? "<network directed=\"true\">" : "<network directed=\"false\">";
  for (std::size_t i = 0; i < n; ++i) {
    text += "<node key=\"v" + std::to_string(i) + "\"><p>" + (i + 1 == n ? "1" : "0") + "</p></node>";
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    text += "<edge from=\"v" + std::to_string(i) + "\" to=\"v" + std::to_string(i + 1) + "\"/>";
  }
  return xpl::net::parse_network(text + "</network>");
}

void BM_CheckChain(benchmark::State& state) {
  xpl::net::Network g = chain(static_cast<std::size_t>(state.range(0)));
  xpl::logic::XplFormula f = xpl::logic::parse_xpl(R"(EF [p = "1"])");
  for (auto _ : state) benchmark::DoNotOptimize(xpl::logic::check(g, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckChain)->RangeMultiplier(2)->Range(1 << 12, 1 << 17)->Complexity(benchmark::oN);

void BM_LabelStep(benchmark::State& state) {
  xpl::net::Network g = chain(1 << 15);
  xpl::logic::XplFormula f =
      xpl::logic::parse_xpl(R"(EU([p = "0" and not(p = "2")], [p = "1"]) | AG [contains(p, "0")])");
  unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(xpl::logic::label_step(g, f, threads));
}
BENCHMARK(BM_LabelStep)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_ModelCheckPure(benchmark::State& state) {
  xpl::net::Network g = chain(static_cast<std::size_t>(state.range(0)));
  xpl::logic::XplFormula f = xpl::logic::parse_xpl(R"(AF [p = "1"] & EG !IEX [p = "1"])");
  xpl::logic::Labelling l = xpl::logic::label_step(g, f);
  xpl::ctl::CtlFormula pure = xpl::logic::replace_step(f, l.registry);
  for (auto _ : state) benchmark::DoNotOptimize(xpl::ctl::model_check(g, l.labels, pure));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ModelCheckPure)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

void BM_Metrics(benchmark::State& state) {
  xpl::net::Network g = chain(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(xpl::metrics::clustering(g));
    benchmark::DoNotOptimize(xpl::metrics::degree_histogram(g));
    benchmark::DoNotOptimize(xpl::metrics::eulerian_path_exists(g));
  }
}
BENCHMARK(BM_Metrics)->Arg(1 << 12)->Arg(1 << 15);

void BM_Geodesics(benchmark::State& state) {
  xpl::net::Network g = chain(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(xpl::metrics::geodesics(g));
}
BENCHMARK(BM_Geodesics)->Arg(256)->Arg(1024);

}  // namespace
BENCHMARK_MAIN();
