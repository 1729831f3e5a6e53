// Copyright 2026 The adjmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adjmech/mc.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "adjmech/error.h"

namespace adjmech {
namespace {

std::mt19937_64 SeedEngine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(SeedEngine(seed, stream_id)) {}

std::vector<double> SampleUniform(RngStream stream, std::size_t n, double low,
                                  double high) {
  if (!(low < high)) {
    throw Error(ErrorCode::kBadSupport, "sample_uniform needs low < high");
  }
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample_uniform needs n >= 1");
  }
  std::vector<double> out(n);
  for (double& x : out) x = stream.Uniform(low, high);
  return out;
}

void MeanAccumulator::Add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void MeanAccumulator::Merge(const MeanAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double n_a = static_cast<double>(count_);
  const double n_b = static_cast<double>(other.count_);
  const double n = n_a + n_b;
  const double delta = other.mean_ - mean_;
  mean_ += delta * n_b / n;
  m2_ += other.m2_ + delta * delta * n_a * n_b / n;
  count_ += other.count_;
}

double MeanAccumulator::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

EstimateWithCI MeanAccumulator::ToEstimate(std::uint64_t seed,
                                           std::uint64_t stream_id) const {
  if (count_ < 2) {
    throw Error(ErrorCode::kInsufficientSamples,
                "an estimate needs at least two samples");
  }
  EstimateWithCI est;
  est.mean = mean_;
  est.std_error = std::sqrt(std::max(0.0, variance()) /
                            static_cast<double>(count_));
  est.samples = count_;
  est.seed = seed;
  est.stream_id = stream_id;
  return est;
}

EstimateWithCI EstimateMean(std::span<const double> values,
                            const RngStream& meta) {
  MeanAccumulator acc;
  for (double v : values) acc.Add(v);
  return acc.ToEstimate(meta.seed(), meta.stream_id());
}

std::size_t SamplePlan::ChunkSamples(std::size_t chunk) const {
  const std::size_t begin = chunk * chunk_size;
  return std::min(chunk_size, samples - begin);
}

void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

EstimateWithCI EstimateByStreams(
    const SamplePlan& plan,
    const std::function<double(RngStream&)>& draw_one) {
  auto partials = MapStreams<MeanAccumulator>(
      plan, [&](RngStream& stream, std::size_t n) {
        MeanAccumulator acc;
        for (std::size_t i = 0; i < n; ++i) acc.Add(draw_one(stream));
        return acc;
      });
  MeanAccumulator total;
  for (const auto& p : partials) total.Merge(p);
  return total.ToEstimate(plan.seed, plan.base_stream);
}

}  // namespace adjmech
