#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "northpole/haar.hpp"
#include "northpole/ks.hpp"
#include "northpole/rng.hpp"

namespace northpole::mc {

/// Known-bad substitutions the battery must detect.
enum class Fixture {
  None,
  QrWithoutSignFix,           // QR sampler skips the R-diagonal sign correction
  U2KernelWithoutXi1Squared,  // exact U_2 sampler uses a kernel missing xi1^2
};

/// Outcome of one named check. Statistical checks carry their KsReport;
/// deterministic and moment checks report an observed value against a bound.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::optional<KsReport> ks;
  double observed = 0.0;
  double bound = 0.0;
};

/// Shared knobs for the checks below. Every check derives its own streams
/// from (seed, check name), so checks are independent and reproducible.
struct CheckContext {
  std::uint64_t seed = kDefaultSeed;
  double alpha = 0.001;
  Fixture fixture = Fixture::None;
};

/// Max |(Γ^2)_11 - u2_identity| and |(Γ^3)_11 - u3_identity| over `draws`
/// Haar matrices per sampler, plus the largest orthogonality defect seen.
/// Three results: identity k=2, identity k=3, orthogonality; bound 1e-10.
std::vector<CheckResult> check_identities(const CheckContext& ctx, int p,
                                          std::size_t draws);

/// Γ11 vs cdf_f(., p) and Γ11^2 vs Beta(1/2, (p-1)/2), one-sample KS.
std::vector<CheckResult> check_marginals(const CheckContext& ctx, int p,
                                         haar::HaarMethod method, std::size_t n);

/// QR vs decomposition sampler on (Γ^k)_11, k = 1, 2, 3; two-sample KS.
/// Also reports the largest orthogonality defect over all emitted matrices.
std::vector<CheckResult> check_sampler_agreement(const CheckContext& ctx, int p,
                                                 std::size_t n);

/// Exact representation sampler vs (Γ^k)_11 over QR Haar draws; two-sample KS.
CheckResult check_representation(const CheckContext& ctx, int p, int k,
                                 std::size_t n);

/// |mean(U_k) - target| <= 4 SE with target 1/p (k = 2) or 0 (k = 3),
/// using the exact sampler.
CheckResult check_moment(const CheckContext& ctx, int p, int k, std::size_t n);

/// KS statistic of sqrt(p) U_k vs N(0, 1) against kCltSmokeBound.
CheckResult check_clt(const CheckContext& ctx, int p, int k, std::size_t n);

/// First coordinate and pairwise dot products of uniform sphere points vs
/// cdf_f(., d); rotation invariance of the sphere sampler.
std::vector<CheckResult> check_sphere(const CheckContext& ctx, std::size_t d,
                                      std::size_t n);

/// Law of (gΓ)_11 for fixed orthogonal g vs Γ_11 (left invariance), and of
/// y'Γ^k y vs (Γ^k)_11 for a fixed unit y (base-point invariance), k = 1..3.
std::vector<CheckResult> check_invariance(const CheckContext& ctx, int p,
                                          std::size_t n);

/// dot(w1, e1) and dot(w2, e1) of decomposed Haar draws vs cdf_f(., p-1),
/// separately on gamma11 > 0 and gamma11 < 0.
std::vector<CheckResult> check_partition_laws(const CheckContext& ctx, int p,
                                              std::size_t n);

struct BatteryConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t n = 100000;
  std::size_t identity_draws = 10000;
  double alpha = 0.001;
  Fixture fixture = Fixture::None;
};

struct BatteryReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::vector<std::string> failures() const;
};

/// The full verification suite: identities for p = 3..12, marginal laws for
/// p in {3, 5, 10, 20}, sampler agreement and representation equivalence for
/// p in {3, 5, 10}, moments, the p = 400 normality smoke checks, sphere and
/// invariance properties.
BatteryReport run_battery(const BatteryConfig& cfg);

std::string to_string(Fixture f);
std::optional<Fixture> parse_fixture(const std::string& name);

}  // namespace northpole::mc
