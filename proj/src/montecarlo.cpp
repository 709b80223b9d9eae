// Copyright 2026 The softfusion Authors. All rights reserved.
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

#include "softfusion/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace softfusion::mc {
namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Estimate make_estimate(std::uint64_t hits, std::uint64_t trials) {
  Estimate e;
  e.hits = hits;
  e.trials = trials;
  e.p = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(trials));
  return e;
}

// Runs body(chunk_index, first_trial, count) over all chunks and sums the
// per-chunk counts; the result is independent of the worker count.
template <std::size_t K, class Body>
std::array<std::uint64_t, K> run_chunks(const SimConfig& cfg, Body body) {
  const std::uint64_t chunks = (cfg.trials + kChunk - 1) / kChunk;
  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  std::vector<std::array<std::uint64_t, K>> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t first = c * kChunk;
      partial[c] = body(c, std::min(kChunk, cfg.trials - first));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::array<std::uint64_t, K> total{};
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < K; ++k) total[k] += p[k];
  }
  return total;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGolden))) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + kGolden * ++counter_); }

double CounterRng::next_open_unit() {
  // 53 random bits mapped to (0, 1].
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

DetectionEstimate simulate_detection(const PowerPair& pair, const FcAction& action,
                                     const SystemParams& params, const SimConfig& cfg) {
  const HypothesisMeans m = HypothesisMeans::of(pair, params.sigma_w2);
  const std::uint64_t draws = static_cast<std::uint64_t>(action.w) * params.n;
  const double inv = 1.0 / static_cast<double>(draws);
  const auto counts = run_chunks<2>(cfg, [&](std::uint64_t chunk, std::uint64_t count) {
    CounterRng rng(cfg.seed, chunk);
    std::array<std::uint64_t, 2> c{};
    for (std::uint64_t trial = 0; trial < count; ++trial) {
      double h0 = 0.0;
      for (std::uint64_t d = 0; d < draws; ++d) h0 += rng.next_exponential(m.mu0);
      double h1 = 0.0;
      for (std::uint64_t d = 0; d < draws; ++d) h1 += rng.next_exponential(m.mu1);
      if (h0 * inv > action.t) ++c[0];   // false alarm
      if (h1 * inv <= action.t) ++c[1];  // missed detection
    }
    return c;
  });
  return {make_estimate(counts[0], cfg.trials), make_estimate(counts[1], cfg.trials)};
}

Estimate simulate_outage(const PowerPair& pair, double tau, double sigma_b2, const SimConfig& cfg) {
  const auto counts = run_chunks<1>(cfg, [&](std::uint64_t chunk, std::uint64_t count) {
    CounterRng rng(cfg.seed, chunk);
    std::array<std::uint64_t, 1> c{};
    for (std::uint64_t trial = 0; trial < count; ++trial) {
      const double g_ab = rng.next_exponential(1.0);
      const double g_jb = rng.next_exponential(1.0);
      const double sinr = g_ab * pair.p_a / (sigma_b2 + g_jb * pair.p_j);
      if (sinr < tau) ++c[0];
    }
    return c;
  });
  return make_estimate(counts[0], cfg.trials);
}

}  // namespace softfusion::mc
