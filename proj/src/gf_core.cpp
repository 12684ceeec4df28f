#include "dcpgen/gf_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dcpgen/errors.hpp"

namespace dcpgen {

namespace {

// Per-distribution and whole-context ceilings on stored series terms.
constexpr std::size_t kMaxTruncation = 50'000'000;
constexpr std::size_t kMaxStoredTerms = 100'000'000;
constexpr std::uint64_t kCoprimeTableLimit = 4096;

class TotientCache {
 public:
  const TotientTable& upto(std::size_t n) {
    if (n > kMaxTruncation) {
      throw ResourceLimitError("series truncation order " + std::to_string(n) + " exceeds budget of " +
                               std::to_string(kMaxTruncation) + " terms");
    }
    if (n > table_.limit) table_ = totient_sieve(std::max<std::size_t>(n, std::min(2 * table_.limit, kMaxTruncation)));
    return table_;
  }
  TotientTable release() && { return std::move(table_); }

 private:
  TotientTable table_ = totient_sieve(1024);
};

// sum_{m > N} m^j y^m <= t_{N+1} / (1 - r), t_m = m^j y^m, once the ratio
// bound r = ((N+2)/(N+1))^j y drops below one. Infinity before that.
double power_tail_bound(double y, std::size_t N, int j) {
  const double m = static_cast<double>(N + 1);
  const double r = std::pow((m + 1.0) / m, j) * y;
  if (r >= 1.0) return INFINITY;
  return std::pow(m, j) * std::exp(m * std::log(y)) / (1.0 - r);
}

LengthDistribution length_distribution_at(double y, double tol, TotientCache& cache,
                                          std::vector<double>* weights_out) {
  LengthDistribution dist;
  dist.param = y;
  std::vector<double> weights;
  double total = 0.0;
  double pw = 1.0;
  for (std::size_t n = 1;; ++n) {
    const TotientTable& phi = cache.upto(n);
    pw *= y;
    const double w = static_cast<double>(phi[n]) * pw;
    weights.push_back(w);
    total += w;
    if (length_tail_bound(y, n) < tol * total) break;
  }
  dist.total = total;
  dist.cdf.resize(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    dist.cdf[i] = acc / total;
  }
  dist.cdf.back() = 1.0;
  const std::size_t g = dist.cdf.size();
  dist.guide.resize(g);
  std::size_t j = 0;
  for (std::size_t i = 0; i < g; ++i) {
    const double level = static_cast<double>(i) / static_cast<double>(g);
    while (dist.cdf[j] <= level) ++j;
    dist.guide[i] = static_cast<std::uint32_t>(j);
  }
  if (weights_out) *weights_out = std::move(weights);
  return dist;
}

struct MomentSums {
  Moments moments;
  std::size_t order = 0;
};

MomentSums moment_sums(double x, double tol, TotientCache& cache) {
  double mean = 0.0;
  double var = 0.0;
  double pw = 1.0;
  std::size_t n = 1;
  for (;; ++n) {
    const TotientTable& phi = cache.upto(n);
    pw *= x;
    const double nd = static_cast<double>(n);
    const double denom = 1.0 - pw;
    const double f = static_cast<double>(phi[n]);
    mean += f * nd * pw / denom;
    var += f * nd * nd * pw / (denom * denom);
    const double next_denom = 1.0 - pw * x;
    const double mean_tail = power_tail_bound(x, n, 2) / next_denom;
    const double var_tail = power_tail_bound(x, n, 3) / (next_denom * next_denom);
    if (mean_tail < tol * mean && var_tail < tol * var) break;
  }
  return {{mean, std::sqrt(var)}, n};
}

void check_parameter(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("Boltzmann parameter must lie in (0,1)");
}

}  // namespace

TotientTable totient_sieve(std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("totient_sieve: limit must be positive");
  TotientTable t;
  t.limit = limit;
  t.values.assign(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  std::vector<bool> composite(limit + 1, false);
  t.values[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      t.values[i] = i - 1;
    }
    for (std::uint64_t p : primes) {
      const std::uint64_t m = i * p;
      if (m > limit) break;
      composite[m] = true;
      if (i % p == 0) {
        t.values[m] = t.values[i] * p;
        break;
      }
      t.values[m] = t.values[i] * (p - 1);
    }
  }
  return t;
}

double length_tail_bound(double y, std::size_t N) {
  const double m = static_cast<double>(N + 1);
  const double one_minus = 1.0 - y;
  return std::exp(m * std::log(y)) * (m * one_minus + y) / (one_minus * one_minus);
}

GfContext build_context(double x, double tail_tol) {
  check_parameter(x);
  if (!(tail_tol > 0.0 && tail_tol < 1e-3)) throw std::invalid_argument("tail_tol must lie in (0, 1e-3)");

  GfContext ctx;
  ctx.x_ = x;
  ctx.tail_tol_ = tail_tol;
  TotientCache cache;

  ctx.by_index_.push_back(length_distribution_at(x, tail_tol, cache, &ctx.size_weights_));
  std::size_t stored = ctx.by_index_.front().cdf.size();
  const double lambda1 = ctx.by_index_.front().total;
  ctx.lambda_.push_back(lambda1);

  const double log_x = std::log(x);
  for (std::size_t k = 2;; ++k) {
    // Bound on sum_{j >= k} lambda_j from A(y) <= y/(1-y)^2.
    const double xk = std::exp(static_cast<double>(k) * log_x);
    const double rest_bound = xk / ((1.0 - x) * (1.0 - xk) * (1.0 - xk));
    LengthDistribution dist = length_distribution_at(xk, tail_tol, cache, nullptr);
    const double lambda_k = dist.total / static_cast<double>(k);
    if ((lambda_k < tail_tol * lambda1 && rest_bound < tail_tol * lambda1) || !(lambda_k > 0.0)) break;
    stored += dist.cdf.size();
    if (stored > kMaxStoredTerms) throw ResourceLimitError("GfContext: replication tables exceed the memory budget");
    ctx.by_index_.push_back(std::move(dist));
    ctx.lambda_.push_back(lambda_k);
  }

  ctx.lambda_tail_.assign(ctx.lambda_.size() + 1, 0.0);
  for (std::size_t k = ctx.lambda_.size(); k > 0; --k) ctx.lambda_tail_[k - 1] = ctx.lambda_tail_[k] + ctx.lambda_[k - 1];

  const MomentSums ms = moment_sums(x, tail_tol, cache);
  ctx.moments_ = ms.moments;
  ctx.moment_n_ = ms.order;
  ctx.totients_ = std::move(cache).release();

  ctx.coprime_limit_ = std::min<std::uint64_t>(ctx.trunc_n(), kCoprimeTableLimit);
  const std::uint64_t lim = ctx.coprime_limit_;
  ctx.coprime_bits_.assign((lim * (lim + 1) / 2 + 63) / 64, 0);
  for (std::uint64_t n = 1; n <= lim; ++n)
    for (std::uint64_t split = 1; split <= n; ++split)
      if (std::gcd(split, n) == 1) {
        const std::uint64_t bit = n * (n - 1) / 2 + split - 1;
        ctx.coprime_bits_[bit / 64] |= std::uint64_t{1} << (bit % 64);
      }
  return ctx;
}

bool GfContext::coprime_split(std::uint64_t n, std::uint64_t split) const noexcept {
  if (n > coprime_limit_) return std::gcd(split, n) == 1;
  const std::uint64_t bit = n * (n - 1) / 2 + split - 1;
  return (coprime_bits_[bit / 64] >> (bit % 64)) & 1;
}

double mean_size(const GfContext& ctx) { return ctx.moments().mu1; }

double mean_size(double x, double tail_tol) { return size_moments(x, tail_tol).mu1; }

Moments size_variance(const GfContext& ctx) { return ctx.moments(); }

Moments size_moments(double x, double tail_tol) {
  check_parameter(x);
  TotientCache cache;
  return moment_sums(x, tail_tol, cache).moments;
}

double tune_parameter(double n, bool refine) {
  if (!(n >= 1.0)) throw std::invalid_argument("tune_parameter: target size must be >= 1");
  const double closed = 1.0 - std::cbrt(12.0 * kZeta3 / (n * kPi * kPi));
  if (!refine && closed > 0.0) return closed;

  double lo = 0.0;
  double hi = std::max(closed, 0.5);
  while (mean_size(hi) <= n) hi = 1.0 - (1.0 - hi) / 2.0;
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double m = mean_size(mid);
    if (std::abs(m - n) <= 1e-6 * n) break;
    (m < n ? lo : hi) = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  return mid;
}

IdentitySides series_identity_sides(double z, std::size_t max_n) {
  check_parameter(z);
  IdentitySides sides;
  if (max_n < 2) return sides;
  const TotientTable phi = totient_sieve(max_n);
  double pw = z;
  for (std::size_t n = 2; n <= max_n; ++n) {
    pw *= z;
    const double ratio = pw / (1.0 - pw);
    std::uint64_t coprime_sum = 0;
    for (std::uint64_t p = 1; p < n; ++p)
      if (std::gcd(p, n - p) == 1) coprime_sum += p;
    sides.lhs += ratio * static_cast<double>(coprime_sum);
    sides.rhs += static_cast<double>(n) * static_cast<double>(phi[n]) * ratio / 2.0;
  }
  return sides;
}

double series_identity_check(const GfContext& ctx) {
  const std::size_t max_n = std::max<std::size_t>(ctx.moment_n(), 2);
  const double z = ctx.x();
  const TotientTable& phi = ctx.totients();
  double lhs = 0.0;
  double rhs = 0.0;
  double worst = 0.0;
  double pw = z;
  for (std::size_t n = 2; n <= max_n; ++n) {
    pw *= z;
    const double ratio = pw / (1.0 - pw);
    std::uint64_t coprime_sum = 0;
    for (std::uint64_t p = 1; p < n; ++p)
      if (std::gcd(p, n - p) == 1) coprime_sum += p;
    lhs += ratio * static_cast<double>(coprime_sum);
    rhs += static_cast<double>(n) * static_cast<double>(phi[n]) * ratio / 2.0;
    if (rhs > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return worst;
}

double log_product_direct(double x, std::size_t N, const TotientTable& phi) {
  if (N > phi.limit) throw std::invalid_argument("log_product_direct: totient table too short");
  double acc = 0.0;
  double pw = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    pw *= x;
    acc -= static_cast<double>(phi[n]) * std::log1p(-pw);
  }
  return acc;
}

}  // namespace dcpgen
