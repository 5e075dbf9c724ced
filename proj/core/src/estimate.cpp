#include "northpole/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "northpole/error.hpp"
#include "northpole/pole.hpp"
#include "northpole/special.hpp"

namespace northpole::mc {

void for_each_chunk(std::size_t chunks,
                    const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(
      chunks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
          try {
            body(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

void require_sample_size(std::size_t n, const char* op) {
  if (n < kMinEstimateSamples) {
    throw PreconditionError(std::string(op) + " requires n >= " +
                            std::to_string(kMinEstimateSamples));
  }
}

}  // namespace

EstimateWithCI estimate_mean(std::span<const double> draws) {
  require_sample_size(draws.size(), "estimate_mean");
  const double n = static_cast<double>(draws.size());
  double sum = 0.0;
  for (double x : draws) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : draws) ss += (x - mean) * (x - mean);
  const double variance = ss / (n - 1.0);
  return {mean, std::sqrt(variance / n), draws.size()};
}

EstimateWithCI estimate_mean(const Sampler& sampler, std::size_t n,
                             const StreamPlan& plan) {
  require_sample_size(n, "estimate_mean");
  return estimate_mean(collect(sampler, n, plan));
}

EstimateWithCI estimate_prob_positive(std::span<const double> draws) {
  require_sample_size(draws.size(), "estimate_prob_positive");
  const auto positives = std::count_if(draws.begin(), draws.end(),
                                       [](double x) { return x > 0.0; });
  const double n = static_cast<double>(draws.size());
  const double q = static_cast<double>(positives) / n;
  return {q, std::sqrt(q * (1.0 - q) / n), draws.size()};
}

EstimateWithCI estimate_prob_positive(const Sampler& sampler, std::size_t n,
                                      const StreamPlan& plan) {
  require_sample_size(n, "estimate_prob_positive");
  return estimate_prob_positive(collect(sampler, n, plan));
}

std::vector<TableRow> reproduce_table(std::span<const int> dims, std::size_t n,
                                      std::uint64_t seed) {
  std::vector<TableRow> rows;
  rows.reserve(dims.size());
  for (int p : dims) {
    if (p < 3) {
      throw PreconditionError("reproduce_table requires every p >= 3, got " +
                              std::to_string(p));
    }
    const StreamPlan plan{seed, "table/u2/" + std::to_string(p)};
    const EstimateWithCI e = estimate_prob_positive(
        [p](RngStream& rng) { return pole::sample_u2(p, rng).value; }, n, plan);
    rows.push_back({p, e.mean, e.std_error, e.n});
  }
  return rows;
}

KsReport clt_check(int p, int k, std::size_t n, double alpha,
                   std::uint64_t seed) {
  if (k != 2 && k != 3) throw PreconditionError("clt_check requires k in {2, 3}");
  if (p < 3) throw PreconditionError("clt_check requires p >= 3");
  const double scale = std::sqrt(static_cast<double>(p));
  const StreamPlan plan{seed, "clt/u" + std::to_string(k) + "/" + std::to_string(p)};
  const std::vector<double> draws = collect(
      [&](RngStream& rng) { return scale * pole::sample_exact(k, p, rng).value; },
      n, plan);
  return one_sample_ks(draws, special::normal_cdf, alpha);
}

}  // namespace northpole::mc
