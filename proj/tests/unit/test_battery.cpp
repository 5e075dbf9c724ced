#include <doctest.h>

#include <algorithm>

#include "northpole/battery.hpp"
#include "northpole/fixtures.hpp"

using namespace northpole::mc;
using northpole::haar::HaarMethod;

namespace {

bool all_pass(const std::vector<CheckResult>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace

TEST_CASE("fixture names round-trip") {
  for (Fixture f : {Fixture::None, Fixture::QrWithoutSignFix, Fixture::U2KernelWithoutXi1Squared}) {
    CHECK(parse_fixture(to_string(f)) == f);
  }
  CHECK_FALSE(parse_fixture("nonsense").has_value());
}

TEST_CASE("fixture kernel differs from the real one") {
  CHECK(northpole::fixtures::u2_kernel_without_xi1_squared(0.6, 0.5) ==
        doctest::Approx(0.32));
}

TEST_CASE("identity checks are deterministic and tight") {
  const CheckContext ctx{};
  const auto cs = check_identities(ctx, 6, 2000);
  REQUIRE(cs.size() == 3);
  CHECK(all_pass(cs));
  for (const auto& c : cs) CHECK(c.observed <= 1e-10);
}

TEST_CASE("QR without sign fix fails the marginal check") {
  CheckContext ctx;
  CHECK(all_pass(check_marginals(ctx, 5, HaarMethod::Qr, 20000)));
  ctx.fixture = Fixture::QrWithoutSignFix;
  const auto cs = check_marginals(ctx, 5, HaarMethod::Qr, 20000);
  CHECK_FALSE(cs[0].pass);
  // The decomposition route is unaffected by the QR fixture.
  CHECK(all_pass(check_marginals(ctx, 5, HaarMethod::Decomposition, 20000)));
}

TEST_CASE("U_2 kernel without xi1^2 fails representation and moment checks") {
  CheckContext ctx;
  CHECK(check_representation(ctx, 3, 2, 20000).pass);
  ctx.fixture = Fixture::U2KernelWithoutXi1Squared;
  CHECK_FALSE(check_representation(ctx, 3, 2, 20000).pass);
  CHECK_FALSE(check_moment(ctx, 3, 2, 20000).pass);
  // U_3 does not use the U_2 kernel.
  CHECK(check_representation(ctx, 3, 3, 20000).pass);
}

TEST_CASE("reduced battery passes and is reproducible") {
  BatteryConfig cfg;
  cfg.n = 20000;
  cfg.identity_draws = 500;
  const auto a = run_battery(cfg);
  CHECK(a.all_pass());
  for (const auto& name : a.failures()) MESSAGE("failed: " << name);
  const auto b = run_battery(cfg);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].observed == b.checks[i].observed);
  }
}
