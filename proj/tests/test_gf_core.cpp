#include <doctest.h>

#include <cmath>

#include "dcpgen/errors.hpp"
#include "dcpgen/gf_core.hpp"
#include "support/oracles.hpp"

using namespace dcpgen;

namespace {

// sum_{n <= N} phi(n) n^j x^n / (1 - x^n)^j in long double, brute-force phi.
long double weighted_sum(double x, int j, std::size_t N) {
  long double s = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    const long double xn = std::pow(static_cast<long double>(x), static_cast<long double>(n));
    s += oracle::totient(n) * std::pow(static_cast<long double>(n), j) * xn / std::pow(1 - xn, j > 0 ? j : 0);
  }
  return s;
}

}  // namespace

TEST_CASE("totient_sieve") {
  CHECK_THROWS_AS(totient_sieve(0), std::invalid_argument);
  const TotientTable one = totient_sieve(1);
  CHECK(one[1] == 1);
  const TotientTable t = totient_sieve(10);
  CHECK(t[9] == 6);
  CHECK(t[10] == 4);

  const TotientTable big = totient_sieve(1'000'000);
  CHECK(oracle::is_prime(999983));
  CHECK(big[999983] == 999982);
  for (std::size_t n = 1; n <= 2000; ++n) {
    REQUIRE(big[n] == oracle::totient(n));
    std::uint64_t divisor_sum = 0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) divisor_sum += big[d];
    REQUIRE(divisor_sum == n);
    if (oracle::is_prime(n)) REQUIRE(big[n] == n - 1);
  }
}

TEST_CASE("build_context at x = 0.5") {
  const GfContext ctx = build_context(0.5, 1e-12);
  CHECK(ctx.series_a() == doctest::Approx(static_cast<double>(weighted_sum(0.5, 0, 200))).epsilon(1e-12));
  CHECK(ctx.series_a() == doctest::Approx(1.3676).epsilon(1e-4));
  CHECK(ctx.size_cdf().back() == 1.0);
  // P(n = 1) = 0.5 / A(0.5).
  CHECK(ctx.size_cdf()[0] == doctest::Approx(0.5 / ctx.series_a()).epsilon(1e-12));
  CHECK(ctx.size_cdf()[0] == doctest::Approx(0.366).epsilon(2e-3));
  CHECK(length_tail_bound(0.5, ctx.trunc_n()) < 1e-12 * ctx.series_a());
}

TEST_CASE("build_context rejects bad input") {
  CHECK_THROWS_AS(build_context(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_context(1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_context(-0.3), std::invalid_argument);
  CHECK_THROWS_AS(build_context(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_context(0.5, 1e-2), std::invalid_argument);
  CHECK_THROWS_AS(build_context(1.0 - 1e-9), ResourceLimitError);
}

TEST_CASE("tail bound formula matches its definition") {
  for (double y : {0.3, 0.7, 0.95}) {
    for (std::size_t N : {5u, 40u, 200u}) {
      long double direct = 0;
      for (std::size_t n = N + 1; n < 20000; ++n) direct += n * std::pow(static_cast<long double>(y), n);
      CHECK(length_tail_bound(y, N) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-9));
    }
  }
}

TEST_CASE("small-x limit") {
  const GfContext ctx = build_context(1e-6);
  CHECK(ctx.log_s() == doctest::Approx(1e-6).epsilon(1e-3));
  CHECK(ctx.size_cdf()[0] > 1 - 1e-5);
  CHECK(mean_size(ctx) == doctest::Approx(1e-6 / (1 - 1e-6)).epsilon(1e-3));
}

TEST_CASE("x = 0.98 builds with a truncation of a few thousand") {
  const GfContext ctx = build_context(0.98);
  CHECK(ctx.trunc_n() > 1000);
  CHECK(ctx.trunc_n() < 10000);
}

TEST_CASE("context invariants") {
  for (double x : {0.3, 0.5, 0.8, 0.95}) {
    CAPTURE(x);
    const double tol = 1e-12;
    const GfContext ctx = build_context(x, tol);
    const auto cdf = ctx.size_cdf();
    const auto& phi = ctx.totients();
    for (std::size_t i = 1; i < cdf.size(); ++i) {
      REQUIRE(cdf[i] <= 1.0);
      if (phi[i + 1] > 0) REQUIRE(cdf[i] > cdf[i - 1]);
    }
    const auto lambda = ctx.lambda();
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      REQUIRE(lambda[k] > 0);
      if (k + 1 < lambda.size()) REQUIRE(lambda[k + 1] < lambda[k]);
    }
    const auto tail = ctx.lambda_tail();
    REQUIRE(tail.back() == 0.0);
    REQUIRE(tail.size() == lambda.size() + 1);

    // ln S two ways: through lambda_k, and directly from the product.
    const std::size_t N = ctx.moment_n() * 4;
    const double direct = log_product_direct(x, N, totient_sieve(N));
    CHECK(std::abs(ctx.log_s() - direct) < 10 * tol * std::abs(ctx.log_s()));
  }
}

TEST_CASE("mean_size against the series oracle and the log-derivative") {
  CHECK(mean_size(0.5) == doctest::Approx(static_cast<double>(weighted_sum(0.5, 1, 200))).epsilon(1e-12));
  CHECK(mean_size(0.5) == doctest::Approx(4.59).epsilon(1e-3));
  for (double x : {0.3, 0.5, 0.8, 0.95}) {
    CAPTURE(x);
    const GfContext ctx = build_context(x);
    // d ln S / d ln x by central difference with step 1e-7 in ln x.
    const double h = 1e-7;
    const double xp = x * std::exp(h), xm = x * std::exp(-h);
    const std::size_t N = ctx.moment_n() * 2;
    const TotientTable phi = totient_sieve(N);
    const double deriv = (log_product_direct(xp, N, phi) - log_product_direct(xm, N, phi)) / (2 * h);
    CHECK(std::abs(mean_size(ctx) - deriv) < 1e-6 * mean_size(ctx));
  }
}

TEST_CASE("size_variance against the series oracle") {
  const Moments m = size_variance(build_context(0.7));
  CHECK(m.mu1 == doctest::Approx(static_cast<double>(weighted_sum(0.7, 1, 500))).epsilon(1e-11));
  CHECK(m.sigma * m.sigma == doctest::Approx(static_cast<double>(weighted_sum(0.7, 2, 500))).epsilon(1e-11));
  CHECK(m.mu1 > 0);
  CHECK(m.sigma > 0);
}

TEST_CASE("bumpy moments") {
  const double x = 0.98;
  const Moments m = size_moments(x);
  const double mu_asym = 12 * kZeta3 / (std::pow(1 - x, 3) * kPi * kPi);
  const double sigma_asym = 6 * std::sqrt(kZeta3 * x) / (kPi * std::pow(1 - x, 2));
  CHECK(std::abs(m.mu1 / mu_asym - 1) < 0.15);
  CHECK(std::abs(m.sigma / sigma_asym - 1) < 0.20);

  const Moments a = size_moments(0.9);
  CHECK(m.sigma / m.mu1 < a.sigma / a.mu1);
  // Small x: near-geometric, coefficient of variation stays large.
  const Moments s = size_moments(1e-3);
  CHECK(s.sigma / s.mu1 > 10);
}

TEST_CASE("tune_parameter") {
  CHECK(tune_parameter(1000, false) == doctest::Approx(0.8867).epsilon(1e-4));
  double prev = 0;
  for (double n : {10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
    const double x = tune_parameter(n, false);
    CHECK(x > prev);
    CHECK(x < 1);
    prev = x;
  }
  for (double n : {1e2, 1e3, 1e4}) {
    const double x = tune_parameter(n, true);
    CHECK(std::abs(mean_size(x) - n) / n < 1e-4);
  }
  // The closed form is not positive for n = 1; the refined root is used.
  const double x1 = tune_parameter(1, false);
  CHECK(x1 > 0);
  CHECK(mean_size(x1) == doctest::Approx(1).epsilon(1e-5));
  CHECK_THROWS_AS(tune_parameter(0.5, true), std::invalid_argument);
}

TEST_CASE("series identity") {
  // Single term: only (1,1) splits 2.
  const IdentitySides two = series_identity_sides(0.4, 2);
  const double expect = 0.16 / (1 - 0.16);
  CHECK(two.lhs == doctest::Approx(expect).epsilon(1e-15));
  CHECK(two.rhs == doctest::Approx(expect).epsilon(1e-15));

  CHECK(series_identity_check(build_context(0.5)) < 1e-10);
  CHECK(series_identity_check(build_context(0.9)) < 1e-8);
  for (double x = 0.05; x <= 0.951; x += 0.05) {
    CAPTURE(x);
    CHECK(series_identity_check(build_context(x)) < 1e-8);
    const IdentitySides s = series_identity_sides(x, 400);
    CHECK(std::abs(s.lhs - s.rhs) <= 1e-8 * s.rhs);
  }
}
