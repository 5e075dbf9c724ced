#include <doctest.h>

#include <cmath>
#include <numbers>

#include "northpole/densities.hpp"
#include "northpole/error.hpp"
#include "northpole/estimate.hpp"
#include "northpole/haar.hpp"
#include "northpole/ks.hpp"
#include "northpole/pole.hpp"
#include "oracles/oracles.hpp"

using namespace northpole::pole;
using northpole::RngStream;
using northpole::haar::HaarMethod;
using northpole::linalg::SquareMatrix;
using northpole::linalg::UnitVector;
namespace haar = northpole::haar;
namespace mc = northpole::mc;

namespace {

SquareMatrix rotation_plus_one(double theta) {
  return SquareMatrix::from_rows({{std::cos(theta), -std::sin(theta), 0.0},
                                  {std::sin(theta), std::cos(theta), 0.0},
                                  {0.0, 0.0, 1.0}});
}

// P(xi1^2 + (1 - xi1^2) xi2 > 0) with xi1 ~ f(.|3), xi2 ~ f(.|2), as a nested
// integral: outer Gauss-Kronrod over xi1, inner tanh-sinh over the arcsine
// density on {xi2 > -xi1^2 / (1 - xi1^2)}.
double prob_u2_positive_p3_by_quadrature() {
  boost::math::quadrature::tanh_sinh<double> inner;
  auto inner_mass = [&](double a) {
    const double threshold = -a * a / (1.0 - a * a);
    if (threshold <= -1.0) return 1.0;
    return inner.integrate([](double b) { return oracles::density(b, 2); }, threshold, 1.0);
  };
  auto outer = [&](double a) { return oracles::density(a, 3) * inner_mass(a); };
  const double knot = 1.0 / std::numbers::sqrt2;
  double total = 0.0;
  const double breaks[] = {-1.0, -knot, 0.0, knot, 1.0};
  for (int i = 0; i < 4; ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        outer, breaks[i], breaks[i + 1], 15, 1e-13);
  }
  return total;
}

std::vector<double> exact_draws(int p, int k, std::uint64_t seed, std::size_t n) {
  return mc::collect([&](RngStream& rng) { return sample_exact(k, p, rng).value; }, n,
                     {seed, "exact"});
}

std::vector<double> direct_draws(int p, int k, std::uint64_t seed, std::size_t n) {
  return mc::collect(
      [&](RngStream& rng) { return sample_direct(k, p, HaarMethod::Qr, rng).value; }, n,
      {seed, "direct"});
}

}  // namespace

TEST_CASE("u_k_direct: worked values and errors") {
  for (int k = 1; k <= 6; ++k) CHECK(u_k_direct(SquareMatrix::identity(4), k) == 1.0);
  CHECK(u_k_direct(rotation_plus_one(std::numbers::pi / 3), 2) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(u_k_direct(rotation_plus_one(0.3), 5) == doctest::Approx(std::cos(1.5)).epsilon(1e-13));
  CHECK_THROWS_AS(u_k_direct(SquareMatrix::from_rows({{1, 1}, {0, 1}}), 2),
                  northpole::PreconditionError);
  CHECK_THROWS_AS(u_k_direct(SquareMatrix::identity(3), 0), northpole::PreconditionError);
}

TEST_CASE("u_k_direct equals the (1,1) entry of the matrix power") {
  RngStream rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto g = haar::sample_haar_qr(7, rng).gamma;
    for (int k = 1; k <= 5; ++k) {
      REQUIRE(std::fabs(u_k_direct(g, k) - northpole::linalg::matrix_power(g, k)(0, 0)) <= 1e-12);
    }
  }
}

TEST_CASE("algebraic identities for (Γ^2)_11 and (Γ^3)_11 hold to 1e-10") {
  RngStream rng(2);
  for (int p = 3; p <= 12; ++p) {
    for (int i = 0; i < 10000; ++i) {
      const auto g = (i % 2 ? haar::sample_haar_qr(p, rng)
                            : haar::sample_haar_decomposition(p, rng)).gamma;
      const auto part = haar::decompose_gamma(g);
      REQUIRE(std::fabs(u_k_direct(g, 2) - u2_identity(part)) <= 1e-10);
      REQUIRE(std::fabs(u_k_direct(g, 3) - u3_identity(part)) <= 1e-10);
    }
  }
}

TEST_CASE("identities: degenerate partitions") {
  RngStream rng(3);
  const auto u1 = northpole::linalg::sample_uniform_sphere(4, rng);
  const auto u2 = northpole::linalg::sample_uniform_sphere(4, rng);
  const auto delta = haar::sample_haar_qr(3, rng).gamma;

  const auto zero = haar::decompose_gamma(haar::assemble_gamma(0.0, u1, u2, delta));
  CHECK(u2_identity(zero) == doctest::Approx(northpole::linalg::dot(zero.w2, zero.w1)));
  const auto g22w1 = northpole::linalg::matvec(zero.gamma22, zero.w1.entries());
  CHECK(u3_identity(zero) ==
        doctest::Approx(northpole::linalg::dot(zero.w2.entries(), g22w1)));

  const auto same = haar::decompose_gamma(haar::assemble_gamma(0.4, u1, u1, delta));
  CHECK(u2_identity(same) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(haar::decompose_gamma(SquareMatrix::identity(5)),
                  northpole::PreconditionError);
}

TEST_CASE("kernels: worked values") {
  for (double x : {-1.0, -0.3, 0.0, 0.8}) CHECK(u2_kernel(1.0, x) == 1.0);
  CHECK(u2_kernel(0.0, 0.37) == 0.37);
  CHECK(u2_kernel(0.6, 0.5) == doctest::Approx(0.68).epsilon(1e-15));
  CHECK(u3_kernel({1.0, 0.2, -0.7}) == 1.0);
  CHECK(u3_kernel({0.0, 0.3, 0.5}) == doctest::Approx((1 - 0.09) * 0.5).epsilon(1e-15));
  CHECK(u3_kernel({0.5, 0.5, 0.5}) == doctest::Approx(0.6875).epsilon(1e-15));
}

TEST_CASE("kernels map the [-1, 1] cube into [-1, 1]") {
  const double eps = 1e-12;
  const int steps = 40;
  for (int i = 0; i <= steps; ++i) {
    const double a = -1.0 + 2.0 * i / steps;
    for (int j = 0; j <= steps; ++j) {
      const double b = -1.0 + 2.0 * j / steps;
      REQUIRE(std::fabs(u2_kernel(a, b)) <= 1.0 + eps);
      for (int l = 0; l <= steps; ++l) {
        const double c = -1.0 + 2.0 * l / steps;
        REQUIRE(std::fabs(u3_kernel({a, b, c})) <= 1.0 + eps);
      }
    }
  }
  RngStream rng(4);
  for (int t = 0; t < 100000; ++t) {
    const double a = 2 * rng.uniform() - 1;
    const double b = 2 * rng.uniform() - 1;
    const double c = 2 * rng.uniform() - 1;
    REQUIRE(std::fabs(u2_kernel(a, b)) <= 1.0 + eps);
    REQUIRE(std::fabs(u3_kernel({a, b, c})) <= 1.0 + eps);
  }
}

TEST_CASE("representation samplers: ranges, metadata and errors") {
  RngStream rng(5);
  for (int i = 0; i < 10000; ++i) {
    const auto s1 = sample_u1(2, rng);
    const auto s2 = sample_u2(3, rng);
    const auto s3 = sample_u3(3, rng);
    REQUIRE(std::fabs(s1.value) <= 1.0);
    REQUIRE(std::fabs(s2.value) <= 1.0 + 1e-12);
    REQUIRE(std::fabs(s3.value) <= 1.0 + 1e-12);
  }
  const auto s = sample_u3(5, rng);
  CHECK(s.k == 3);
  CHECK(s.p == 5);
  CHECK(s.source == StatSource::Representation);
  CHECK_THROWS_AS(sample_u1(1, rng), northpole::PreconditionError);
  CHECK_THROWS_AS(sample_u2(2, rng), northpole::PreconditionError);
  CHECK_THROWS_AS(sample_u3(2, rng), northpole::PreconditionError);
  CHECK_THROWS_WITH_AS(sample_exact(4, 5, rng), doctest::Contains("use --method direct"),
                       northpole::PreconditionError);
  CHECK(sample_direct(4, 5, HaarMethod::Qr, rng).source == StatSource::Direct);
}

TEST_CASE("p = 3 uses a Rademacher third variable") {
  RngStream rng(6);
  for (int i = 0; i < 1000; ++i) REQUIRE(std::fabs(sample_xi(3, rng).xi3) == 1.0);
}

TEST_CASE("P(U_2 > 0) at p = 3 matches quadrature and the tabulated 0.71") {
  const double exact = prob_u2_positive_p3_by_quadrature();
  MESSAGE("quadrature P(U_2 > 0 | p = 3) = " << exact);
  const auto e = mc::estimate_prob_positive(exact_draws(3, 2, 11, 1000000));
  CHECK(std::fabs(e.mean - exact) <= 4 * e.std_error);
  CHECK(std::fabs(e.mean - 0.71) <= 0.01);
}

TEST_CASE("moments: E U_2 = 1/p and E U_3 = 0 at p = 5") {
  const auto u2 = mc::estimate_mean(exact_draws(5, 2, 12, 1000000));
  CHECK(std::fabs(u2.mean - 0.2) <= 4 * u2.std_error);
  const auto u3 = mc::estimate_mean(exact_draws(5, 3, 13, 1000000));
  CHECK(std::fabs(u3.mean) <= 4 * u3.std_error);
}

TEST_CASE("U_1 representation: law f(.|p) and square law Beta(1/2, (p-1)/2)") {
  constexpr int p = 6;
  const auto r = mc::ks_with_retry([&](int a) {
    return mc::one_sample_ks(exact_draws(p, 1, 20 + a, 100000),
                             [](double x) { return oracles::cdf_by_ibeta(x, 6); }, 0.001);
  });
  CHECK(r.pass);
  const auto sq = mc::ks_with_retry([&](int a) {
    auto xs = exact_draws(p, 1, 30 + a, 100000);
    for (double& x : xs) x *= x;
    return mc::one_sample_ks(xs, [](double y) { return oracles::ibeta(0.5, 2.5, y); }, 0.001);
  });
  CHECK(sq.pass);
}

TEST_CASE("representations match direct matrix powers") {
  const std::pair<int, int> cases[] = {{3, 2}, {3, 3}, {5, 3}};
  for (const auto& [p, k] : cases) {
    CAPTURE(p);
    CAPTURE(k);
    const auto r = mc::ks_with_retry([&](int a) {
      return mc::two_sample_ks(exact_draws(p, k, 40 + a, 100000),
                               direct_draws(p, k, 50 + a, 100000), 0.001);
    });
    CHECK(r.pass);
  }
}

TEST_CASE("base point invariance: y'Γ^k y has the law of (Γ^k)_11") {
  const int p = 4;
  const auto y = UnitVector::normalized({1.0, -2.0, 0.5, 3.0});
  for (int k = 1; k <= 3; ++k) {
    const auto r = mc::ks_with_retry([&](int a) {
      const auto at_y = mc::collect(
          [&](RngStream& rng) {
            return quadratic_form_power(haar::sample_haar_decomposition(p, rng).gamma, y, k);
          },
          100000, {static_cast<std::uint64_t>(60 + a), "y"});
      return mc::two_sample_ks(at_y, direct_draws(p, k, 70 + a, 100000), 0.001);
    });
    CAPTURE(k);
    CHECK(r.pass);
  }
}
