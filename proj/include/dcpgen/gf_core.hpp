#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dcpgen {

inline constexpr double kDefaultTailTol = 1e-12;

// 20-digit literals.
inline constexpr double kZeta3 = 1.2020569031595942854;
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;
inline constexpr double kPi = 3.14159265358979323846;

/// Euler totients phi(1..limit). Entry 0 is unused and holds 0.
struct TotientTable {
  std::size_t limit = 0;
  std::vector<std::uint64_t> values;

  std::uint64_t operator[](std::size_t n) const { return values[n]; }
};

/// Linear sieve. Throws std::invalid_argument for limit == 0.
TotientTable totient_sieve(std::size_t limit);

/// Truncated distribution of the length of a primitive Christoffel word
/// under Boltzmann parameter y: P(n) proportional to phi(n) y^n.
struct LengthDistribution {
  double param = 0.0;
  double total = 0.0;           // sum_{n <= cdf.size()} phi(n) y^n
  std::vector<double> cdf;      // cdf[n-1] = P(length <= n); back() == 1
  /// guide[i] = first index j with cdf[j] > i / guide.size(); lets the
  /// inverse-CDF lookup start next to its answer.
  std::vector<std::uint32_t> guide;

  /// Smallest n with P(length <= n) > u, for u in [0, 1).
  std::size_t inverse_cdf(double u) const noexcept {
    std::size_t j = guide[static_cast<std::size_t>(u * static_cast<double>(guide.size()))];
    while (cdf[j] <= u) ++j;
    return j + 1;
  }
};

struct Moments {
  double mu1 = 0.0;    // expected multiset size
  double sigma = 0.0;  // standard deviation of the size
};

/// Frozen numeric state for sampling at Boltzmann parameter x.
///
/// Holds phi, the truncated series A(x) = sum phi(n) x^n, the length
/// distribution at every replication index k (parameter x^k) that the
/// multiset sampler can reach, the Poisson rates lambda_k = A(x^k)/k with
/// their suffix sums, and ln S(x) = sum_k lambda_k. Immutable after build;
/// share freely between threads.
class GfContext {
 public:
  double x() const noexcept { return x_; }
  double tail_tol() const noexcept { return tail_tol_; }
  /// Truncation order of A(x).
  std::size_t trunc_n() const noexcept { return base().cdf.size(); }
  const TotientTable& totients() const noexcept { return totients_; }

  /// phi(n) x^n, n = 1..trunc_n (index n-1).
  std::span<const double> size_weights() const noexcept { return size_weights_; }
  std::span<const double> size_cdf() const noexcept { return base().cdf; }
  double series_a() const noexcept { return base().total; }

  /// lambda_k for k = 1..k_max (index k-1).
  std::span<const double> lambda() const noexcept { return lambda_; }
  /// T_k = sum_{j > k} lambda_j for k = 0..k_max; T_0 = ln S, T_{k_max} = 0.
  std::span<const double> lambda_tail() const noexcept { return lambda_tail_; }
  std::size_t k_max() const noexcept { return lambda_.size(); }
  double log_s() const noexcept { return lambda_tail_.front(); }

  /// Length distribution at parameter x^k, 1 <= k <= k_max.
  const LengthDistribution& length_distribution(std::size_t k) const { return by_index_.at(k - 1); }

  /// gcd(split, n) == 1, from a precomputed bit table for small n.
  bool coprime_split(std::uint64_t n, std::uint64_t split) const noexcept;

  const Moments& moments() const noexcept { return moments_; }
  /// Truncation order used for the moment series (n- and n^2-weighted).
  std::size_t moment_n() const noexcept { return moment_n_; }

 private:
  friend GfContext build_context(double x, double tail_tol);
  const LengthDistribution& base() const noexcept { return by_index_.front(); }

  double x_ = 0.0;
  double tail_tol_ = kDefaultTailTol;
  TotientTable totients_;
  std::vector<double> size_weights_;
  std::vector<LengthDistribution> by_index_;
  std::vector<double> lambda_;
  std::vector<double> lambda_tail_;
  Moments moments_;
  std::size_t moment_n_ = 0;
  std::uint64_t coprime_limit_ = 0;
  std::vector<std::uint64_t> coprime_bits_;  // row n at bit n(n-1)/2, entry split-1
};

/// Throws std::invalid_argument unless 0 < x < 1 and 0 < tail_tol < 1e-3;
/// ResourceLimitError when the tail bound needs more than the series budget.
GfContext build_context(double x, double tail_tol = kDefaultTailTol);

/// Upper bound on sum_{n > N} n y^n, with phi(n) <= n.
double length_tail_bound(double y, std::size_t N);

/// x S'(x)/S(x) = sum phi(n) n x^n / (1 - x^n), from the truncated series.
double mean_size(const GfContext& ctx);
/// Same series evaluated directly at x (no context; used for tuning).
double mean_size(double x, double tail_tol = kDefaultTailTol);

/// mu1 from mean_size, sigma^2 = sum phi(n) n^2 x^n / (1 - x^n)^2.
Moments size_variance(const GfContext& ctx);
Moments size_moments(double x, double tail_tol = kDefaultTailTol);

/// Closed form x_n = 1 - (12 zeta(3) / (n pi^2))^(1/3), or with refine the
/// root of mean_size(x) = n found by bisection (|mean - n| <= 1e-6 n).
/// The closed form is negative for n <= 1; there the refined root is returned.
double tune_parameter(double n, bool refine);

/// Both sides of
///   sum_{n>=2} z^n/(1-z^n) sum_{p+q=n, gcd(p,q)=1} p  =  sum_{n>=2} n phi(n) z^n / (2(1-z^n)),
/// summed to order max_n; the inner sum on the left is brute force over p.
struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};
IdentitySides series_identity_sides(double z, std::size_t max_n);

/// Max relative gap of the identity over the partial sums up to the
/// context's moment truncation order.
double series_identity_check(const GfContext& ctx);

/// sum_{n <= N} -phi(n) log1p(-x^n): the logarithm of the truncated product,
/// computed directly rather than through the lambda_k.
double log_product_direct(double x, std::size_t N, const TotientTable& phi);

}  // namespace dcpgen
