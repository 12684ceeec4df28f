#include "dcpgen/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace dcpgen {

namespace {

AsymptoticConstants make_constants() {
  AsymptoticConstants c{};
  c.zeta3 = kZeta3;
  c.zeta_prime_minus1 = kZetaPrimeMinus1;
  c.alpha = 0.3338488807;
  const double zeta2 = kPi * kPi / 6;
  c.beta = 3.0 / std::cbrt(4.0) * std::cbrt(kZeta3 / zeta2);
  c.kappa = 4.075517917;
  c.alpha_saddle = std::exp(-2 * kZetaPrimeMinus1) * std::pow(2 * kPi, -1.0 / 6) *
                   std::pow(12 * kZeta3 / (kPi * kPi), 1.0 / 9) / std::sqrt(6 * kPi);
  return c;
}

struct PathStats {
  std::vector<double> heights;
  double end_e = 0, end_n = 0, s1_e = 0, s1_n = 0, init = 0, init_share = 0, size = 0, trials = 0;
};

PathStats measure(const SampleReport<PathSample>& r, const std::vector<double>& grid) {
  const SegmentMultiset& m = r.value.multiset;
  const PathWord& w = r.value.word;
  const double size = static_cast<double>(std::max<std::uint64_t>(m.size(), 1));

  // col[x] = height of the east step leaving abscissa x.
  std::vector<std::uint64_t> col;
  col.reserve(w.zeros());
  std::uint64_t y = 0;
  for (char c : w.bits()) {
    if (c == '1') ++y;
    else col.push_back(y);
  }

  PathStats s;
  s.heights.reserve(grid.size());
  for (double z : grid) {
    const auto x = static_cast<std::size_t>(std::floor(z * size));
    s.heights.push_back(static_cast<double>(x < col.size() ? col[x] : y) / size);
  }

  std::uint64_t e1 = 0, n1 = 1;  // the prepended north step
  const CoprimeSegment unit = CoprimeSegment::trusted(1, 1);
  for (const auto& entry : m.entries()) {
    if (slope_compare(entry.segment, unit) != std::strong_ordering::greater) break;
    e1 += entry.multiplicity * entry.segment.east();
    n1 += entry.multiplicity * entry.segment.north();
  }
  s.end_e = static_cast<double>(w.zeros()) / size;
  s.end_n = static_cast<double>(w.ones()) / size;
  s.s1_e = static_cast<double>(e1) / size;
  s.s1_n = static_cast<double>(n1) / size;
  s.init = static_cast<double>(m.vertical_multiplicity());
  s.init_share = s.init / static_cast<double>(w.ones());
  s.size = static_cast<double>(m.size());
  s.trials = static_cast<double>(r.trials);
  return s;
}

}  // namespace

const AsymptoticConstants& asymptotic_constants() {
  static const AsymptoticConstants c = make_constants();
  return c;
}

double log_asym_count(std::uint64_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("log_asym_count: n must be positive");
  const double nd = static_cast<double>(n);
  return std::log(alpha) - 11.0 / 18 * std::log(nd) + asymptotic_constants().beta * std::cbrt(nd * nd);
}

double log_asym_count(std::uint64_t n) { return log_asym_count(n, asymptotic_constants().alpha); }

double asym_count(std::uint64_t n) { return std::exp(log_asym_count(n)); }

Moments asym_moments(double x) {
  if (!(x > 0 && x < 1)) throw std::invalid_argument("asym_moments: x must lie in (0, 1)");
  const double t = 1 - x;
  return {12 * kZeta3 / (t * t * t * kPi * kPi), 6 * std::sqrt(kZeta3 * x) / (kPi * t * t)};
}

double expected_initial_steps(double n) {
  if (!(n >= 1)) throw std::invalid_argument("expected_initial_steps: n must be >= 1");
  return std::cbrt(18 * kPi * kPi * n) / (6 * std::cbrt(kZeta3));
}

double limit_shape(double z) {
  if (!(z >= 0)) throw std::invalid_argument("limit_shape: z must be >= 0");
  z = std::min(z, 0.5);
  return std::sqrt(2 * z) - z;
}

double abscissa_of_slope(double s) {
  if (!(s >= 0)) throw std::invalid_argument("abscissa_of_slope: s must be >= 0");
  if (std::isinf(s)) return 0.0;
  const double r = s / (1 + s);
  return 0.5 * (1 - r * r);
}

SlopePoint slope_point(double s) {
  const double north = abscissa_of_slope(s);
  const double east = std::isinf(s) ? 0.0 : 0.5 / ((1 + s) * (1 + s));
  return {east, north};
}

CoprimeSlopeSum coprime_slope_sum(std::uint64_t n, double s) {
  if (n < 2) throw std::invalid_argument("coprime_slope_sum: n must be >= 2");
  if (!(s >= 0)) throw std::invalid_argument("coprime_slope_sum: s must be >= 0");
  CoprimeSlopeSum out;
  std::uint64_t phi = 0;
  for (std::uint64_t p = 1; p < n; ++p) {
    const std::uint64_t q = n - p;
    if (std::gcd(p, q) != 1) continue;
    ++phi;
    if (static_cast<double>(q) > s * static_cast<double>(p)) {
      out.north_sum += q;
      out.east_sum += p;
    }
  }
  const double nphi = static_cast<double>(n) * static_cast<double>(phi);
  out.ratio = static_cast<double>(out.north_sum) / (abscissa_of_slope(s) * nphi);
  out.east_ratio = static_cast<double>(out.east_sum) / (slope_point(s).east * nphi);
  return out;
}

ShapeProfile shape_profile(const GfContext& ctx, std::uint64_t n, std::uint64_t samples, std::size_t grid_points,
                           std::uint64_t seed, double eps, unsigned workers, std::uint64_t trial_cap) {
  if (samples < 1) throw std::invalid_argument("shape_profile: samples must be >= 1");
  if (grid_points < 2) throw std::invalid_argument("shape_profile: grid_points must be >= 2");

  ShapeProfile out;
  out.n = n;
  out.eps = eps;
  out.samples = samples;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double z = 0.5 * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    out.grid.push_back(z);
    out.reference.push_back(limit_shape(z));
  }

  std::vector<PathStats> stats(samples);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < samples;) {
      try {
        RngStream rng(seed, i);
        stats[i] = measure(sample_path_approx(ctx, n, eps, rng, trial_cap), out.grid);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = samples;
      }
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  out.mean_heights.assign(grid_points, 0.0);
  for (const PathStats& s : stats) {
    for (std::size_t i = 0; i < grid_points; ++i) out.mean_heights[i] += s.heights[i];
    out.endpoint_east += s.end_e;
    out.endpoint_north += s.end_n;
    out.slope1_east += s.s1_e;
    out.slope1_north += s.s1_n;
    out.initial_run += s.init;
    out.initial_run_share += s.init_share;
    out.mean_size += s.size;
    out.mean_trials += s.trials;
  }
  const double k = static_cast<double>(samples);
  for (double& h : out.mean_heights) h /= k;
  for (double* v : {&out.endpoint_east, &out.endpoint_north, &out.slope1_east, &out.slope1_north, &out.initial_run,
                    &out.initial_run_share, &out.mean_size, &out.mean_trials})
    *v /= k;
  return out;
}

double sup_distance(const ShapeProfile& p) {
  double d = 0;
  for (std::size_t i = 0; i < p.grid.size(); ++i) d = std::max(d, std::abs(p.mean_heights[i] - p.reference[i]));
  return d;
}

}  // namespace dcpgen
