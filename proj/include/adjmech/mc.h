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

#ifndef ADJMECH_MC_H_
#define ADJMECH_MC_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace adjmech {

// Recorded in every report and CSV header.
inline constexpr std::string_view kGeneratorName =
    "mt19937_64(seed_seq{seed,stream_id})";

// An index-addressable substream. Each (seed, stream_id) pair seeds its own
// engine, so a copy of a fresh stream replays the same sequence.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // 53-bit uniform on [0, 1), platform independent.
  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double low, double high) {
    return low + (high - low) * Uniform01();
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// n i.i.d. uniform draws on [low, high). The stream is taken by value, so
// repeated calls with the same stream return the same draws.
std::vector<double> SampleUniform(RngStream stream, std::size_t n, double low,
                                  double high);

struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  double HalfWidth(double z = 1.96) const { return z * std_error; }
};

// Streaming mean/variance (Welford) with the pairwise merge of Chan et al.
class MeanAccumulator {
 public:
  void Add(double x);
  void Merge(const MeanAccumulator& other);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; needs count() >= 2.
  double variance() const;

  // Throws kInsufficientSamples with fewer than two samples.
  EstimateWithCI ToEstimate(std::uint64_t seed, std::uint64_t stream_id) const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

EstimateWithCI EstimateMean(std::span<const double> values,
                            const RngStream& meta);

// How a Monte Carlo run is cut into substreams. Chunk k always draws from
// stream (seed, base_stream + k), whatever the thread count, and partials
// are merged in chunk order, so results do not depend on `threads`.
struct SamplePlan {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t base_stream = 0;
  int threads = 1;
  std::size_t chunk_size = std::size_t{1} << 15;

  std::size_t chunks() const {
    return (samples + chunk_size - 1) / chunk_size;
  }
  std::size_t ChunkSamples(std::size_t chunk) const;
};

// Runs body(i) for i in [0, n) on up to `threads` worker threads.
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& body);

// fn(RngStream&, std::size_t n) -> Result, once per chunk; results are
// returned in chunk order.
template <typename Result, typename Fn>
std::vector<Result> MapStreams(const SamplePlan& plan, Fn&& fn) {
  std::vector<Result> out(plan.chunks());
  ParallelFor(out.size(), plan.threads, [&](std::size_t k) {
    RngStream stream(plan.seed, plan.base_stream + k);
    out[k] = fn(stream, plan.ChunkSamples(k));
  });
  return out;
}

// Mean of a per-sample statistic over the whole plan.
EstimateWithCI EstimateByStreams(
    const SamplePlan& plan,
    const std::function<double(RngStream&)>& draw_one);

}  // namespace adjmech

#endif  // ADJMECH_MC_H_
