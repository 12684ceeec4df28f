#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dcpgen/christoffel.hpp"
#include "dcpgen/gf_core.hpp"
#include "dcpgen/rng.hpp"

namespace dcpgen {

inline constexpr std::uint64_t kDefaultTrialCap = 1'000'000'000ULL;

/// Multiset of primitive segments in canonical form: entries strictly
/// decreasing by slope. Size counts steps of the segments only; the leading
/// north step that assemble_path() prepends is not part of it.
class SegmentMultiset {
 public:
  struct Entry {
    CoprimeSegment segment;
    std::uint64_t multiplicity;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SegmentMultiset() = default;
  /// Accepts entries in any order with repeats; sorts and merges them.
  explicit SegmentMultiset(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::uint64_t size() const noexcept { return size_; }
  /// East steps, i.e. zeros of the assembled word.
  std::uint64_t east_steps() const noexcept { return east_; }
  /// North steps of the segments (the assembled word has one more).
  std::uint64_t north_steps() const noexcept { return north_; }
  /// Multiplicity of the vertical segment (0,1).
  std::uint64_t vertical_multiplicity() const noexcept;

  /// Overwrites the multiplicity of (0,1); zero removes it.
  void set_vertical_multiplicity(std::uint64_t m);

  friend bool operator==(const SegmentMultiset&, const SegmentMultiset&) = default;

 private:
  std::vector<Entry> entries_;
  std::uint64_t size_ = 0;
  std::uint64_t east_ = 0;
  std::uint64_t north_ = 0;
};

template <class T>
struct SampleReport {
  T value;
  std::uint64_t trials = 1;  // rejection rounds, >= 1
  std::uint64_t size = 0;
};

struct CoprimeDraw {
  CoprimeSegment segment;
  std::uint64_t draws;  // uniform draws of the split point, >= 1
};

struct PathSample {
  SegmentMultiset multiset;
  PathWord word;
};

/// Length n of a primitive word with probability phi(n) y^n / A(y), where
/// y = x^index. Inverse CDF by binary search.
std::size_t sample_size_index(const GfContext& ctx, RngStream& rng, std::size_t index = 1);

/// Boltzmann draw of a primitive segment at parameter x^index: draw n, then
/// a split point uniform in {1..n} until it is coprime with n. The split
/// point is the north count, so n = 1 gives (0,1).
CoprimeDraw sample_coprime_pair(const GfContext& ctx, RngStream& rng, std::size_t index = 1);

/// Boltzmann multiset: P(m) = x^|m| / S(x). Max replication index K with
/// P(K <= k) = exp(-T_k); Poisson(lambda_j) units at j < K, a zero-truncated
/// Poisson(lambda_K) at K; a unit at index j is one segment drawn at x^j and
/// added j times.
SegmentMultiset sample_multiset(const GfContext& ctx, RngStream& rng);

/// The draws of sample_multiset before sorting and merging: one entry per
/// unit, appended to `units` (which is cleared first). Same law.
void sample_multiset_units(const GfContext& ctx, RngStream& rng, std::vector<SegmentMultiset::Entry>& units);

/// '1' followed by the Christoffel words of the entries in slope order.
PathWord assemble_path(const SegmentMultiset& m);

SampleReport<PathSample> sample_path_free(const GfContext& ctx, RngStream& rng);

/// Rejection until the size is exactly n. Throws TrialCapExceeded.
SampleReport<PathSample> sample_path_exact(const GfContext& ctx, std::uint64_t n, RngStream& rng,
                                           std::uint64_t trial_cap = kDefaultTrialCap);

/// Rejection until the size lies in [(1-eps) n, (1+eps) n].
SampleReport<PathSample> sample_path_approx(const GfContext& ctx, std::uint64_t n, double eps, RngStream& rng,
                                            std::uint64_t trial_cap = kDefaultTrialCap);

// Exposed for tests.
std::uint64_t sample_poisson(double mean, RngStream& rng);
std::uint64_t sample_poisson_positive(double mean, RngStream& rng);
/// P(k) = (1 - q) q^k, k >= 0.
std::uint64_t sample_geometric(double q, RngStream& rng);

}  // namespace dcpgen
