#pragma once

#include <cstdint>
#include <vector>

#include "dcpgen/boltzmann.hpp"
#include "dcpgen/gf_core.hpp"

namespace dcpgen {

struct AsymptoticConstants {
  double zeta3;
  double zeta_prime_minus1;
  double alpha;  // published prefactor of the count asymptotics
  double beta;   // 3 / 2^(2/3) * (zeta(3) / zeta(2))^(1/3)
  double kappa;  // mean exact-size trials over n^(2/3)
  /// Prefactor obtained by redoing the saddle point on
  ///   ln S(e^-t) = 6 zeta(3) / (pi^2 t^2) - ln(t)/6 - 2 zeta'(-1) - ln(2 pi)/6.
  /// Diagnostic only; asym_count uses alpha.
  double alpha_saddle;
};

const AsymptoticConstants& asymptotic_constants();

/// alpha n^(-11/18) exp(beta n^(2/3)). Overflows past n of roughly 2e5; use
/// log_asym_count there.
double asym_count(std::uint64_t n);
double log_asym_count(std::uint64_t n, double alpha);
double log_asym_count(std::uint64_t n);

/// mu1 ~ 12 zeta(3) / ((1-x)^3 pi^2), sigma ~ 6 sqrt(zeta(3) x) / (pi (1-x)^2).
Moments asym_moments(double x);

/// Mean length of the initial vertical run: cbrt(18 pi^2 n) / (6 cbrt(zeta(3))).
double expected_initial_steps(double n);

/// f(z) = sqrt(2z) - z on [0, 1/2]; larger z clamp to f(1/2) = 1/2.
/// Throws std::invalid_argument for negative z.
double limit_shape(double z);

/// (1/2)(1 - (s/(1+s))^2). This is the north coordinate of the point of
/// slope s on the renormalized limit curve (f(1/(2(1+s)^2)) equals it).
double abscissa_of_slope(double s);

/// Both coordinates of the point of slope s on the curve z -> f(z).
struct SlopePoint {
  double east;   // 1 / (2 (1+s)^2)
  double north;  // abscissa_of_slope(s)
};
SlopePoint slope_point(double s);

/// Exact sums over coprime splits p + q = n (p east, q north) with q/p > s.
struct CoprimeSlopeSum {
  std::uint64_t north_sum = 0;  // sum of q
  std::uint64_t east_sum = 0;   // sum of p
  double ratio = 0.0;           // north_sum / (abscissa_of_slope(s) n phi(n))
  double east_ratio = 0.0;      // east_sum / (n phi(n) / (2 (1+s)^2))
};
CoprimeSlopeSum coprime_slope_sum(std::uint64_t n, double s);

struct ShapeProfile {
  std::uint64_t n = 0;
  double eps = 0.0;
  std::uint64_t samples = 0;
  std::vector<double> grid;          // z in [0, 1/2]
  std::vector<double> mean_heights;  // mean renormalized height at z
  std::vector<double> reference;     // limit_shape(z)
  // Means over samples, coordinates divided by the sample's multiset size.
  double endpoint_east = 0.0;
  double endpoint_north = 0.0;
  double slope1_east = 0.0;    // vertex between slopes > 1 and slopes <= 1
  double slope1_north = 0.0;
  double initial_run = 0.0;    // vertical (0,1) multiplicity, not renormalized
  double initial_run_share = 0.0;  // initial_run / final height, averaged
  double mean_size = 0.0;
  double mean_trials = 0.0;
};

/// Approximate-size samples at target n, window eps. Sample i draws from
/// RngStream(seed, i); results are merged in index order, so the profile
/// does not depend on the worker count. Heights are piecewise constant on
/// unit steps.
ShapeProfile shape_profile(const GfContext& ctx, std::uint64_t n, std::uint64_t samples, std::size_t grid_points,
                           std::uint64_t seed, double eps = 0.05, unsigned workers = 1,
                           std::uint64_t trial_cap = kDefaultTrialCap);

/// max_z |mean_heights(z) - limit_shape(z)|.
double sup_distance(const ShapeProfile& p);

}  // namespace dcpgen
