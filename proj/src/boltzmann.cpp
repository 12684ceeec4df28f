#include "dcpgen/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dcpgen/errors.hpp"

namespace dcpgen {

SegmentMultiset::SegmentMultiset(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return SteeperFirst{}(a.segment, b.segment); });
  for (const Entry& e : entries) {
    if (e.multiplicity == 0) continue;
    if (!entries_.empty() && entries_.back().segment == e.segment) {
      entries_.back().multiplicity += e.multiplicity;
    } else {
      entries_.push_back(e);
    }
    size_ += e.multiplicity * e.segment.length();
    east_ += e.multiplicity * e.segment.east();
    north_ += e.multiplicity * e.segment.north();
  }
}

std::uint64_t SegmentMultiset::vertical_multiplicity() const noexcept {
  if (!entries_.empty() && entries_.front().segment.east() == 0) return entries_.front().multiplicity;
  return 0;
}

void SegmentMultiset::set_vertical_multiplicity(std::uint64_t m) {
  const std::uint64_t old = vertical_multiplicity();
  if (old > 0) entries_.erase(entries_.begin());
  if (m > 0) entries_.insert(entries_.begin(), Entry{CoprimeSegment::trusted(0, 1), m});
  size_ = size_ - old + m;
  north_ = north_ - old + m;
}

std::uint64_t sample_poisson(double mean, RngStream& rng) {
  if (!(mean > 0.0)) return 0;
  if (mean < 10.0) {
    // Sequential inversion.
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cum = p;
    std::uint64_t k = 0;
    while (u >= cum && p > 0.0) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
    }
    return k;
  }
  // Transformed rejection with squeeze (Hoermann's PTRS), valid for mean >= 10.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <= -mean + k * loglam - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

std::uint64_t sample_poisson_positive(double mean, RngStream& rng) {
  if (!(mean > 0.0)) throw std::invalid_argument("zero-truncated Poisson needs a positive mean");
  if (mean >= 10.0) {
    for (;;) {
      const std::uint64_t k = sample_poisson(mean, rng);
      if (k > 0) return k;
    }
  }
  // Inversion conditioned on k >= 1: P(k) = mean^k / (k! (e^mean - 1)).
  const double u = rng.uniform();
  double p = mean / std::expm1(mean);
  double cum = p;
  std::uint64_t k = 1;
  while (u >= cum && p > 0.0) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
  }
  return k;
}

std::uint64_t sample_geometric(double q, RngStream& rng) {
  if (!(q > 0.0)) return 0;
  return static_cast<std::uint64_t>(std::floor(std::log(rng.uniform_positive()) / std::log(q)));
}

std::size_t sample_size_index(const GfContext& ctx, RngStream& rng, std::size_t index) {
  return ctx.length_distribution(index).inverse_cdf(rng.uniform());
}

CoprimeDraw sample_coprime_pair(const GfContext& ctx, RngStream& rng, std::size_t index) {
  const std::uint64_t n = sample_size_index(ctx, rng, index);
  std::uint64_t draws = 0;
  for (;;) {
    ++draws;
    const std::uint64_t split = rng.below(n) + 1;
    if (ctx.coprime_split(n, split)) return {CoprimeSegment::trusted(n - split, split), draws};
  }
}

void sample_multiset_units(const GfContext& ctx, RngStream& rng, std::vector<SegmentMultiset::Entry>& units) {
  units.clear();
  const std::span<const double> tail = ctx.lambda_tail();
  const double e = -std::log(rng.uniform_positive());
  // Smallest k with T_k <= e; T is non-increasing and ends at 0.
  const std::size_t max_index =
      static_cast<std::size_t>(std::partition_point(tail.begin(), tail.end(), [e](double t) { return t > e; }) -
                               tail.begin());
  const std::span<const double> lambda = ctx.lambda();
  for (std::size_t j = 1; j <= max_index; ++j) {
    const std::uint64_t count =
        j < max_index ? sample_poisson(lambda[j - 1], rng) : sample_poisson_positive(lambda[j - 1], rng);
    for (std::uint64_t c = 0; c < count; ++c) units.push_back({sample_coprime_pair(ctx, rng, j).segment, j});
  }
}

SegmentMultiset sample_multiset(const GfContext& ctx, RngStream& rng) {
  std::vector<SegmentMultiset::Entry> units;
  sample_multiset_units(ctx, rng, units);
  return SegmentMultiset(std::move(units));
}

PathWord assemble_path(const SegmentMultiset& m) {
  PathWord w;
  w.reserve(m.size() + 1);
  w.push_back(true);
  for (const auto& e : m.entries()) {
    const PathWord piece = christoffel_word(e.segment);
    for (std::uint64_t i = 0; i < e.multiplicity; ++i) w.append(piece);
  }
  return w;
}

SampleReport<PathSample> sample_path_free(const GfContext& ctx, RngStream& rng) {
  SegmentMultiset m = sample_multiset(ctx, rng);
  const std::uint64_t size = m.size();
  PathWord w = assemble_path(m);
  return {{std::move(m), std::move(w)}, 1, size};
}

namespace {

template <class Accept>
SampleReport<PathSample> sample_until(const GfContext& ctx, RngStream& rng, std::uint64_t trial_cap, Accept accept,
                                      const char* what) {
  for (std::uint64_t trials = 1;; ++trials) {
    SegmentMultiset m = sample_multiset(ctx, rng);
    if (accept(m.size())) {
      const std::uint64_t size = m.size();
      PathWord w = assemble_path(m);
      return {{std::move(m), std::move(w)}, trials, size};
    }
    if (trials >= trial_cap)
      throw TrialCapExceeded(std::string(what) + ": trial cap of " + std::to_string(trial_cap) + " reached", trials);
  }
}

}  // namespace

SampleReport<PathSample> sample_path_exact(const GfContext& ctx, std::uint64_t n, RngStream& rng,
                                           std::uint64_t trial_cap) {
  return sample_until(
      ctx, rng, trial_cap, [n](std::uint64_t size) { return size == n; }, "exact-size sampler");
}

SampleReport<PathSample> sample_path_approx(const GfContext& ctx, std::uint64_t n, double eps, RngStream& rng,
                                            std::uint64_t trial_cap) {
  if (n < 1) throw std::invalid_argument("approximate-size target must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  const double target = static_cast<double>(n);
  const double lo = (1.0 - eps) * target;
  const double hi = (1.0 + eps) * target;
  return sample_until(
      ctx, rng, trial_cap,
      [lo, hi](std::uint64_t size) {
        const double s = static_cast<double>(size);
        return s >= lo && s <= hi;
      },
      "approximate-size sampler");
}

}  // namespace dcpgen
