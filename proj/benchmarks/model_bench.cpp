#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "zsac/evaluate.hpp"
#include "zsac/labels.hpp"
#include "zsac/model.hpp"
#include "zsac/plan.hpp"
#include "zsac/synth.hpp"

namespace {

using namespace zsac;

struct Fixture {
  ClassSet classes;
  TrainingSet samples;
  CompatibilityMatrix w;
};

Fixture make_fixture(std::size_t dim, std::size_t n_classes) {
  SynthParams p;
  p.n_classes = n_classes;
  p.d_x = p.d_y = dim;
  auto corpus = synth_dataset(p);
  ClassSet classes = compose_class_set(corpus.labels, corpus.word_vectors);
  std::vector<std::string> ids;
  for (const auto& r : corpus.manifest.records()) ids.push_back(r.sample_id);
  TrainingSet samples = build_training_set(ids, corpus.manifest, corpus.embeddings, classes);
  TrainingConfig config;
  config.epochs = 1;
  CompatibilityMatrix w = train(samples, classes, config);
  return {std::move(classes), std::move(samples), std::move(w)};
}

void BM_Predict(benchmark::State& state) {
  const auto f = make_fixture(static_cast<std::size_t>(state.range(0)), 50);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict(f.samples[i++ % f.samples.size()].theta, f.w, f.classes));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Predict)->Arg(16)->Arg(128);

void BM_TrainEpoch(benchmark::State& state) {
  const auto f = make_fixture(static_cast<std::size_t>(state.range(0)), 50);
  TrainingConfig config;
  config.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(f.samples, f.classes, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.samples.size()));
}
BENCHMARK(BM_TrainEpoch)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EmpiricalRisk(benchmark::State& state) {
  const auto f = make_fixture(static_cast<std::size_t>(state.range(0)), 50);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_risk(f.samples, f.w, f.classes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.samples.size()));
}
BENCHMARK(BM_EmpiricalRisk)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SettingThreeRun(benchmark::State& state) {
  SynthParams p;
  const auto corpus = synth_dataset(p);
  const ClassSet classes = compose_class_set(corpus.labels, corpus.word_vectors);
  auto plan = make_plan(Setting::kS3, corpus.manifest, 0);
  plan.runs.resize(1);
  EvalOptions options;
  options.training.epochs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_plan(plan, corpus.manifest, corpus.embeddings, classes, options));
  }
}
BENCHMARK(BM_SettingThreeRun)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
