#include "northpole/battery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "northpole/densities.hpp"
#include "northpole/error.hpp"
#include "northpole/estimate.hpp"
#include "northpole/fixtures.hpp"
#include "northpole/pole.hpp"

namespace northpole::mc {

namespace {

constexpr double kIdentityBound = 1e-10;
constexpr double kMomentStandardErrors = 4.0;

using haar::HaarMethod;
using linalg::SquareMatrix;
using linalg::UnitVector;

std::string tag(const std::string& prefix, const std::string& key, int value) {
  return prefix + "/" + key + "=" + std::to_string(value);
}

const char* method_name(HaarMethod m) {
  return m == HaarMethod::Qr ? "qr" : "decomposition";
}

// Seed for one attempt of one named check.
std::uint64_t check_seed(const CheckContext& ctx, const std::string& name,
                         int attempt) {
  return RngStream::derive(ctx.seed, name, static_cast<std::uint64_t>(attempt))
      .seed();
}

StreamPlan plan_for(std::uint64_t seed, const std::string& side) {
  return StreamPlan{seed, side};
}

haar::HaarSample draw_haar(const CheckContext& ctx, int p, HaarMethod method,
                           RngStream& rng) {
  if (method == HaarMethod::Qr) {
    const auto fix = ctx.fixture == Fixture::QrWithoutSignFix
                         ? haar::QrSignFix::Skip
                         : haar::QrSignFix::Apply;
    return haar::sample_haar_qr(p, rng, fix);
  }
  return haar::sample_haar_decomposition(p, rng);
}

double draw_exact(const CheckContext& ctx, int p, int k, RngStream& rng) {
  if (k == 2 && ctx.fixture == Fixture::U2KernelWithoutXi1Squared) {
    return pole::sample_u2(p, rng, &fixtures::u2_kernel_without_xi1_squared)
        .value;
  }
  return pole::sample_exact(k, p, rng).value;
}

CheckResult ks_result(std::string name, const KsReport& r) {
  CheckResult c;
  c.name = std::move(name);
  c.pass = r.pass;
  c.ks = r;
  c.observed = r.statistic;
  c.bound = r.critical;
  return c;
}

CheckResult bound_result(std::string name, double observed, double bound) {
  CheckResult c;
  c.name = std::move(name);
  c.observed = observed;
  c.bound = bound;
  c.pass = observed <= bound;
  return c;
}

// A fixed orthogonal matrix, identical for every attempt of a check.
SquareMatrix fixed_rotation(const CheckContext& ctx, int p) {
  RngStream rng = RngStream::derive(ctx.seed, "fixed-rotation",
                                    static_cast<std::uint64_t>(p));
  return haar::sample_haar_qr(p, rng).gamma;
}

UnitVector fixed_direction(std::size_t p) {
  std::vector<double> y(p);
  for (std::size_t i = 0; i < p; ++i) y[i] = static_cast<double>(i + 1);
  return UnitVector::normalized(std::move(y));
}

}  // namespace

std::vector<CheckResult> check_identities(const CheckContext& ctx, int p,
                                          std::size_t draws) {
  struct Errors {
    double u2 = 0.0;
    double u3 = 0.0;
    double defect = 0.0;
  };
  Errors worst;
  for (HaarMethod method : {HaarMethod::Qr, HaarMethod::Decomposition}) {
    const std::string label = tag(std::string("identity/") + method_name(method), "p", p);
    const auto errors = collect(
        [&](RngStream& rng) {
          const haar::HaarSample s = draw_haar(ctx, p, method, rng);
          const haar::GammaPartition part = haar::decompose_gamma(s.gamma);
          return Errors{
              std::fabs(pole::u_k_direct(s.gamma, 2) - pole::u2_identity(part)),
              std::fabs(pole::u_k_direct(s.gamma, 3) - pole::u3_identity(part)),
              linalg::orthogonality_defect(s.gamma)};
        },
        draws, plan_for(check_seed(ctx, label, 0), label));
    for (const Errors& e : errors) {
      worst.u2 = std::max(worst.u2, e.u2);
      worst.u3 = std::max(worst.u3, e.u3);
      worst.defect = std::max(worst.defect, e.defect);
    }
  }
  return {bound_result(tag("identity/u2", "p", p), worst.u2, kIdentityBound),
          bound_result(tag("identity/u3", "p", p), worst.u3, kIdentityBound),
          bound_result(tag("orthogonality/identity", "p", p), worst.defect,
                       haar::kOrthogonalityTolerance)};
}

std::vector<CheckResult> check_marginals(const CheckContext& ctx, int p,
                                         HaarMethod method, std::size_t n) {
  const std::string base = std::string("marginal/") + method_name(method);
  auto gamma11_draws = [&](const std::string& name, int attempt) {
    return collect(
        [&](RngStream& rng) { return draw_haar(ctx, p, method, rng).gamma(0, 0); },
        n, plan_for(check_seed(ctx, name, attempt), name));
  };

  const std::string f_name = tag(base + "/gamma11", "p", p);
  const KsReport f_report = ks_with_retry([&](int attempt) {
    const auto xs = gamma11_draws(f_name, attempt);
    return one_sample_ks(xs, [p](double x) { return densities::cdf_f(x, p); },
                         ctx.alpha);
  });

  const std::string g_name = tag(base + "/gamma11_sq", "p", p);
  const KsReport g_report = ks_with_retry([&](int attempt) {
    auto xs = gamma11_draws(g_name, attempt);
    for (double& x : xs) x *= x;
    return one_sample_ks(
        xs, [p](double y) { return densities::beta_cdf_g0(y, p); }, ctx.alpha);
  });

  return {ks_result(f_name, f_report), ks_result(g_name, g_report)};
}

std::vector<CheckResult> check_sampler_agreement(const CheckContext& ctx, int p,
                                                 std::size_t n) {
  struct Powers {
    double u[3];
    double defect;
  };
  auto draw_powers = [&](HaarMethod method, const std::string& label,
                         std::uint64_t seed) {
    return collect(
        [&](RngStream& rng) {
          const haar::HaarSample s = draw_haar(ctx, p, method, rng);
          Powers out{};
          std::vector<double> v(static_cast<std::size_t>(p), 0.0);
          v[0] = 1.0;
          for (int k = 0; k < 3; ++k) {
            v = linalg::matvec(s.gamma, v);
            out.u[k] = v[0];
          }
          out.defect = linalg::orthogonality_defect(s.gamma);
          return out;
        },
        n, plan_for(seed, label));
  };

  const std::string base = tag("agreement", "p", p);
  double worst_defect = 0.0;
  KsReport reports[3];
  bool done[3] = {false, false, false};
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::uint64_t seed = check_seed(ctx, base, attempt);
    const auto qr = draw_powers(HaarMethod::Qr, base + "/qr", seed);
    const auto dec = draw_powers(HaarMethod::Decomposition, base + "/decomposition", seed);
    for (const auto* side : {&qr, &dec}) {
      for (const Powers& s : *side) worst_defect = std::max(worst_defect, s.defect);
    }
    for (int k = 0; k < 3; ++k) {
      if (done[k]) continue;
      std::vector<double> xs(n);
      std::vector<double> ys(n);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = qr[i].u[k];
        ys[i] = dec[i].u[k];
      }
      reports[k] = two_sample_ks(xs, ys, ctx.alpha);
      reports[k].attempts = attempt + 1;
      done[k] = reports[k].pass;
    }
    if (done[0] && done[1] && done[2]) break;
  }

  std::vector<CheckResult> out;
  for (int k = 0; k < 3; ++k) {
    out.push_back(ks_result(base + "/k=" + std::to_string(k + 1), reports[k]));
  }
  out.push_back(bound_result(tag("orthogonality/agreement", "p", p),
                             worst_defect, haar::kOrthogonalityTolerance));
  return out;
}

CheckResult check_representation(const CheckContext& ctx, int p, int k,
                                 std::size_t n) {
  const std::string name =
      tag("representation", "k", k) + "/p=" + std::to_string(p);
  const KsReport r = ks_with_retry([&](int attempt) {
    const std::uint64_t seed = check_seed(ctx, name, attempt);
    const auto exact = collect(
        [&](RngStream& rng) { return draw_exact(ctx, p, k, rng); }, n,
        plan_for(seed, name + "/exact"));
    const auto direct = collect(
        [&](RngStream& rng) {
          return pole::u_k_direct(draw_haar(ctx, p, HaarMethod::Qr, rng).gamma, k);
        },
        n, plan_for(seed, name + "/direct"));
    return two_sample_ks(exact, direct, ctx.alpha);
  });
  return ks_result(name, r);
}

CheckResult check_moment(const CheckContext& ctx, int p, int k, std::size_t n) {
  if (k != 2 && k != 3) throw PreconditionError("check_moment requires k in {2, 3}");
  const std::string name = tag("moment", "k", k) + "/p=" + std::to_string(p);
  const EstimateWithCI e = estimate_mean(
      [&](RngStream& rng) { return draw_exact(ctx, p, k, rng); }, n,
      plan_for(check_seed(ctx, name, 0), name));
  const double target = k == 2 ? 1.0 / p : 0.0;
  return bound_result(name, std::fabs(e.mean - target),
                      kMomentStandardErrors * e.std_error);
}

CheckResult check_clt(const CheckContext& ctx, int p, int k, std::size_t n) {
  const std::string name = tag("clt", "k", k) + "/p=" + std::to_string(p);
  const KsReport r = clt_check(p, k, n, ctx.alpha, check_seed(ctx, name, 0));
  CheckResult c = bound_result(name, r.statistic, kCltSmokeBound);
  c.ks = r;
  return c;
}

std::vector<CheckResult> check_sphere(const CheckContext& ctx, std::size_t d,
                                      std::size_t n) {
  const int dim = static_cast<int>(d);
  const auto cdf = [dim](double x) { return densities::cdf_f(x, dim); };
  const std::string base = "sphere/d=" + std::to_string(d);

  const std::string first_name = base + "/first_coordinate";
  const KsReport first = ks_with_retry([&](int attempt) {
    const auto xs = collect(
        [&](RngStream& rng) { return linalg::sample_uniform_sphere(d, rng)[0]; },
        n, plan_for(check_seed(ctx, first_name, attempt), first_name));
    return one_sample_ks(xs, cdf, ctx.alpha);
  });

  const std::string dot_name = base + "/dot";
  const KsReport dot = ks_with_retry([&](int attempt) {
    const auto xs = collect(
        [&](RngStream& rng) {
          const UnitVector a = linalg::sample_uniform_sphere(d, rng);
          const UnitVector b = linalg::sample_uniform_sphere(d, rng);
          return linalg::dot(a, b);
        },
        n, plan_for(check_seed(ctx, dot_name, attempt), dot_name));
    return one_sample_ks(xs, cdf, ctx.alpha);
  });

  const std::string rot_name = base + "/rotation";
  const SquareMatrix g = fixed_rotation(ctx, dim);
  const KsReport rot = ks_with_retry([&](int attempt) {
    const std::uint64_t seed = check_seed(ctx, rot_name, attempt);
    const auto rotated = collect(
        [&](RngStream& rng) {
          const UnitVector v = linalg::sample_uniform_sphere(d, rng);
          return linalg::dot(g.row(0), v.entries());
        },
        n, plan_for(seed, rot_name + "/rotated"));
    const auto plain = collect(
        [&](RngStream& rng) { return linalg::sample_uniform_sphere(d, rng)[0]; },
        n, plan_for(seed, rot_name + "/plain"));
    return two_sample_ks(rotated, plain, ctx.alpha);
  });

  return {ks_result(first_name, first), ks_result(dot_name, dot),
          ks_result(rot_name, rot)};
}

std::vector<CheckResult> check_invariance(const CheckContext& ctx, int p,
                                          std::size_t n) {
  std::vector<CheckResult> out;
  const SquareMatrix g = fixed_rotation(ctx, p);
  const UnitVector y = fixed_direction(static_cast<std::size_t>(p));

  const std::string left_name = tag("invariance/left", "p", p);
  const KsReport left = ks_with_retry([&](int attempt) {
    const std::uint64_t seed = check_seed(ctx, left_name, attempt);
    const auto moved = collect(
        [&](RngStream& rng) {
          const auto s = draw_haar(ctx, p, HaarMethod::Decomposition, rng);
          double acc = 0.0;
          for (int r = 0; r < p; ++r) acc += g(0, r) * s.gamma(r, 0);
          return acc;
        },
        n, plan_for(seed, left_name + "/moved"));
    const auto plain = collect(
        [&](RngStream& rng) {
          return draw_haar(ctx, p, HaarMethod::Decomposition, rng).gamma(0, 0);
        },
        n, plan_for(seed, left_name + "/plain"));
    return two_sample_ks(moved, plain, ctx.alpha);
  });
  out.push_back(ks_result(left_name, left));

  for (int k = 1; k <= 3; ++k) {
    const std::string name =
        tag("invariance/base_point", "k", k) + "/p=" + std::to_string(p);
    const KsReport r = ks_with_retry([&](int attempt) {
      const std::uint64_t seed = check_seed(ctx, name, attempt);
      const auto at_y = collect(
          [&](RngStream& rng) {
            return pole::quadratic_form_power(
                draw_haar(ctx, p, HaarMethod::Qr, rng).gamma, y, k);
          },
          n, plan_for(seed, name + "/y"));
      const auto at_pole = collect(
          [&](RngStream& rng) {
            return pole::u_k_direct(draw_haar(ctx, p, HaarMethod::Qr, rng).gamma, k);
          },
          n, plan_for(seed, name + "/pole"));
      return two_sample_ks(at_y, at_pole, ctx.alpha);
    });
    out.push_back(ks_result(name, r));
  }
  return out;
}

std::vector<CheckResult> check_partition_laws(const CheckContext& ctx, int p,
                                              std::size_t n) {
  if (p < 3) throw PreconditionError("check_partition_laws requires p >= 3");
  struct Draw {
    double gamma11;
    double w1;
    double w2;
  };
  const auto cdf = [p](double x) { return densities::cdf_f(x, p - 1); };
  const std::string base = tag("partition", "p", p);

  std::vector<CheckResult> out;
  for (const char* field : {"w1", "w2"}) {
    for (const bool positive : {true, false}) {
      const std::string name = base + "/" + field +
                               (positive ? "/gamma11>0" : "/gamma11<0");
      const KsReport r = ks_with_retry([&](int attempt) {
        const auto draws = collect(
            [&](RngStream& rng) {
              const auto s = draw_haar(ctx, p, HaarMethod::Qr, rng);
              const auto part = haar::decompose_gamma(s.gamma);
              return Draw{part.gamma11, part.w1[0], part.w2[0]};
            },
            n, plan_for(check_seed(ctx, name, attempt), name));
        std::vector<double> xs;
        xs.reserve(n);
        for (const Draw& d : draws) {
          if ((d.gamma11 > 0.0) == positive) {
            xs.push_back(field[1] == '1' ? d.w1 : d.w2);
          }
        }
        if (xs.empty()) {
          // A stratum that never occurs cannot match the target law.
          KsReport empty;
          empty.statistic = 1.0;
          empty.alpha = ctx.alpha;
          return empty;
        }
        return one_sample_ks(xs, cdf, ctx.alpha);
      });
      out.push_back(ks_result(name, r));
    }
  }
  return out;
}

bool BatteryReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> BatteryReport::failures() const {
  std::vector<std::string> names;
  for (const CheckResult& c : checks) {
    if (!c.pass) names.push_back(c.name);
  }
  return names;
}

BatteryReport run_battery(const BatteryConfig& cfg) {
  const CheckContext ctx{cfg.seed, cfg.alpha, cfg.fixture};
  BatteryReport report;
  auto append = [&](std::vector<CheckResult> more) {
    for (auto& c : more) report.checks.push_back(std::move(c));
  };

  for (int p = 3; p <= 12; ++p) append(check_identities(ctx, p, cfg.identity_draws));
  for (int p : {3, 5, 10, 20}) {
    append(check_marginals(ctx, p, HaarMethod::Qr, cfg.n));
    append(check_marginals(ctx, p, HaarMethod::Decomposition, cfg.n));
  }
  for (int p : {3, 5, 10}) {
    append(check_sampler_agreement(ctx, p, cfg.n));
    for (int k : {2, 3}) report.checks.push_back(check_representation(ctx, p, k, cfg.n));
  }
  for (int p : {3, 5, 10}) {
    for (int k : {2, 3}) report.checks.push_back(check_moment(ctx, p, k, cfg.n));
  }
  for (int k : {2, 3}) report.checks.push_back(check_clt(ctx, 400, k, cfg.n));
  for (std::size_t d : {3u, 4u, 10u}) append(check_sphere(ctx, d, cfg.n));
  for (int p : {3, 5}) append(check_invariance(ctx, p, cfg.n));
  for (int p : {4, 10}) append(check_partition_laws(ctx, p, cfg.n));
  return report;
}

std::string to_string(Fixture f) {
  switch (f) {
    case Fixture::None:
      return "none";
    case Fixture::QrWithoutSignFix:
      return "qr-no-sign-fix";
    case Fixture::U2KernelWithoutXi1Squared:
      return "u2-drop-xi1-squared";
  }
  return "none";
}

std::optional<Fixture> parse_fixture(const std::string& name) {
  for (Fixture f : {Fixture::None, Fixture::QrWithoutSignFix,
                    Fixture::U2KernelWithoutXi1Squared}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

}  // namespace northpole::mc
