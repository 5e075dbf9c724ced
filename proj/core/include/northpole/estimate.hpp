#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "northpole/ks.hpp"
#include "northpole/rng.hpp"

namespace northpole::mc {

/// How a batch of n draws is split into independently seeded chunks. Chunk c
/// uses RngStream::derive(seed, label, c), so the result depends only on the
/// plan and never on the number of worker threads.
struct StreamPlan {
  std::uint64_t seed = kDefaultSeed;
  std::string label = "draws";
  std::size_t chunks = 64;
};

/// Runs body(c) for c in [0, chunks) on up to hardware_concurrency threads.
/// The first exception thrown by any chunk is rethrown.
void for_each_chunk(std::size_t chunks,
                    const std::function<void(std::size_t)>& body);

/// n draws of draw(rng), in chunk order.
template <class Draw>
auto collect(Draw&& draw, std::size_t n, const StreamPlan& plan)
    -> std::vector<std::decay_t<std::invoke_result_t<Draw&, RngStream&>>> {
  using T = std::decay_t<std::invoke_result_t<Draw&, RngStream&>>;
  const std::size_t chunks = plan.chunks == 0 ? 1 : plan.chunks;
  std::vector<std::vector<T>> parts(chunks);
  for_each_chunk(chunks, [&](std::size_t c) {
    const std::size_t begin = c * n / chunks;
    const std::size_t end = (c + 1) * n / chunks;
    RngStream rng = RngStream::derive(plan.seed, plan.label, c);
    auto& part = parts[c];
    part.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) part.push_back(draw(rng));
  });
  if (chunks == 1) return std::move(parts.front());
  std::vector<T> out;
  out.reserve(n);
  for (auto& part : parts) {
    for (auto& x : part) out.push_back(std::move(x));
  }
  return out;
}

using Sampler = std::function<double(RngStream&)>;

/// Minimum sample size accepted by the estimators.
inline constexpr std::size_t kMinEstimateSamples = 1000;

struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Sample mean and its standard error s / sqrt(n).
EstimateWithCI estimate_mean(std::span<const double> draws);
EstimateWithCI estimate_mean(const Sampler& sampler, std::size_t n,
                             const StreamPlan& plan);

/// Fraction of strictly positive draws, with SE sqrt(q (1 - q) / n).
EstimateWithCI estimate_prob_positive(std::span<const double> draws);
EstimateWithCI estimate_prob_positive(const Sampler& sampler, std::size_t n,
                                      const StreamPlan& plan);

struct TableRow {
  int p = 0;
  double prob_positive = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Reference P(U_2 > 0) table: dimensions and two-digit values.
inline const std::vector<int> kTableDims = {3, 4, 5, 10, 20, 50, 100, 500};
inline const std::vector<double> kTableValues = {0.71, 0.68, 0.66, 0.62,
                                                 0.59, 0.56, 0.54, 0.52};

/// P(U_2 > 0) per dimension from the exact U_2 sampler. Row p draws from
/// the plan {seed, "table/u2/<p>"}.
std::vector<TableRow> reproduce_table(std::span<const int> dims, std::size_t n,
                                      std::uint64_t seed);

/// KS statistic for a non-normative large-p normality check.
inline constexpr double kCltSmokeBound = 0.05;

/// One-sample KS of sqrt(p) U_k (exact sampler, k in {2, 3}) against the
/// standard normal CDF. The report's pass flag is the usual KS verdict; the
/// asymptotic check compares the statistic against kCltSmokeBound instead.
KsReport clt_check(int p, int k, std::size_t n, double alpha,
                   std::uint64_t seed);

}  // namespace northpole::mc
