#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "mscr/repair.hpp"
#include "mscr/systematic.hpp"

using namespace mscr;

namespace {

std::vector<Symbol> random_message(const CodeParams& p, std::size_t stripes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Symbol> pick(0, p.field.field().modulus() - 1);
  std::vector<Symbol> out(static_cast<std::size_t>(p.message_len) * stripes);
  for (Symbol& s : out) s = pick(rng);
  return out;
}

CodeParams bench_params() { return derive_params(8, 4, 6, 2, {.min_modulus = 257}); }

void BM_FieldMulInv(benchmark::State& state) {
  PrimeField f(257);
  Symbol x = 123;
  for (auto _ : state) {
    x = f.mul(x, 91);
    x = f.inv(x == 0 ? 1 : x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_FieldMulInv);

void BM_EncodeSystematic(benchmark::State& state) {
  const CodeParams p = bench_params();
  const SystematicCodec codec(p);
  const auto stripes = static_cast<std::size_t>(state.range(0));
  const auto message = random_message(p, stripes, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec.encode(message));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * message.size());
}
BENCHMARK(BM_EncodeSystematic)->Arg(1)->Arg(64)->Arg(1024);

void BM_DecodeParityHeavy(benchmark::State& state) {
  const CodeParams p = bench_params();
  const SystematicCodec codec(p);
  const auto stripes = static_cast<std::size_t>(state.range(0));
  const auto message = random_message(p, stripes, 2);
  const auto shards = codec.encode(message);
  const std::vector<Shard> subset{shards[2], shards[4], shards[6], shards[7]};
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec.decode(subset));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * message.size());
}
BENCHMARK(BM_DecodeParityHeavy)->Arg(1)->Arg(64)->Arg(1024);

void BM_DecodeSystematicFastPath(benchmark::State& state) {
  const CodeParams p = bench_params();
  const SystematicCodec codec(p);
  const auto message = random_message(p, 1024, 3);
  const auto shards = codec.encode(message);
  const std::vector<Shard> subset{shards[0], shards[1], shards[2], shards[3]};
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec.decode(subset));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * message.size());
}
BENCHMARK(BM_DecodeSystematicFastPath);

void BM_CooperativeRepair(benchmark::State& state) {
  const CodeParams p = bench_params();
  const SystematicCodec codec(p);
  const auto stripes = static_cast<std::size_t>(state.range(0));
  const auto shards = codec.encode(random_message(p, stripes, 4));
  const std::vector<std::uint32_t> failed{2, 6};
  std::vector<Shard> survivors;
  for (const Shard& s : shards) {
    if (std::find(failed.begin(), failed.end(), s.node_index) == failed.end()) {
      survivors.push_back(s);
    }
  }
  const std::vector<std::vector<std::uint32_t>> helpers(2,
                                                        std::vector<std::uint32_t>{1, 3, 4, 5, 7, 8});
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_repair_session(p, failed, helpers, survivors));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * stripes);
}
BENCHMARK(BM_CooperativeRepair)->Arg(1)->Arg(64)->Arg(1024);

void BM_PairDecode(benchmark::State& state) {
  const CodeParams p = derive_params(10, 4, 8, 2);
  const PrimeField& f = p.field.field();
  std::vector<Symbol> points(p.field.points().begin(), p.field.points().begin() + p.k_inner);
  std::vector<Symbol> lambda;
  for (Symbol pt : points) lambda.push_back(f.pow(pt, p.mu));
  const PairDecoder decoder(f, vandermonde(f, points, p.alpha), lambda);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Symbol> pick(0, f.modulus() - 1);
  Matrix x(p.k_inner, p.alpha);
  for (std::uint32_t i = 0; i < p.k_inner; ++i) {
    for (std::uint32_t c = 0; c < p.alpha; ++c) x(i, c) = pick(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(decoder.decode(x));
  }
}
BENCHMARK(BM_PairDecode);

}  // namespace

BENCHMARK_MAIN();
