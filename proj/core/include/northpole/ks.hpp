#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace northpole::mc {

/// Outcome of a Kolmogorov-Smirnov test. m is 0 for the one-sample test.
/// pass <=> statistic < critical.
struct KsReport {
  double statistic = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  double alpha = 0.0;
  double critical = 0.0;
  bool pass = false;
  int attempts = 1;
};

/// Asymptotic coefficient c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_coefficient(double alpha);

/// Sup-distance between the empirical CDFs of xs and ys, with critical value
/// c(alpha) sqrt((n + m) / (n m)). Ties are stepped over together.
KsReport two_sample_ks(std::span<const double> xs, std::span<const double> ys,
                       double alpha);

/// sup_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n), critical c(alpha) / sqrt(n).
KsReport one_sample_ks(std::span<const double> xs,
                       const std::function<double(double)>& cdf, double alpha);

/// Runs test(0); if it fails, runs test(1) with fresh draws and reports that
/// second outcome. Two consecutive failures are a failure.
KsReport ks_with_retry(const std::function<KsReport(int attempt)>& test);

}  // namespace northpole::mc
