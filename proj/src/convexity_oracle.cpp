#include "dcpgen/convexity_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dcpgen/gf_core.hpp"

namespace dcpgen {

namespace {

std::vector<std::string_view> lyndon_factors(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i + 1;
    std::size_t k = i;
    while (j < s.size() && s[k] <= s[j]) {
      k = s[k] < s[j] ? i : k + 1;
      ++j;
    }
    while (i <= k) {
      out.push_back(s.substr(i, j - k));
      i += j - k;
    }
  }
  return out;
}

std::int64_t cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; counter-clockwise, no collinear vertices.
std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool inside_convex(const std::vector<LatticePoint>& hull, const LatticePoint& p) {
  const std::size_t n = hull.size();
  if (n == 1) return p == hull[0];
  if (n == 2) {
    if (cross(hull[0], hull[1], p) != 0) return false;
    return std::min(hull[0].x, hull[1].x) <= p.x && p.x <= std::max(hull[0].x, hull[1].x) &&
           std::min(hull[0].y, hull[1].y) <= p.y && p.y <= std::max(hull[0].y, hull[1].y);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cross(hull[i], hull[(i + 1) % n], p) < 0) return false;
  return true;
}

void enumerate_rec(const std::vector<CoprimeSegment>& segs, std::size_t idx, std::size_t remaining,
                   std::vector<SegmentMultiset::Entry>& chosen, std::vector<SegmentMultiset>& out) {
  if (remaining == 0) {
    out.emplace_back(chosen);
    return;
  }
  if (idx == segs.size()) return;
  const std::size_t len = segs[idx].length();
  enumerate_rec(segs, idx + 1, remaining, chosen, out);
  for (std::size_t m = 1; m * len <= remaining; ++m) {
    chosen.push_back({segs[idx], m});
    enumerate_rec(segs, idx + 1, remaining - m * len, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace

std::optional<std::vector<PathWord>> nw_factorization(const PathWord& w) {
  if (w.empty() || w[0] != '1') return std::nullopt;
  std::vector<PathWord> factors;
  std::optional<CoprimeSegment> prev;
  for (std::string_view f : lyndon_factors(std::string_view(w.bits()).substr(1))) {
    PathWord piece{std::string(f)};
    if (!is_christoffel_primitive(piece)) return std::nullopt;
    const CoprimeSegment seg = CoprimeSegment::trusted(piece.zeros(), piece.ones());
    if (prev && slope_compare(*prev, seg) == std::strong_ordering::less) return std::nullopt;
    prev = seg;
    factors.push_back(std::move(piece));
  }
  return factors;
}

bool is_nw_convex(const PathWord& w) { return nw_factorization(w).has_value(); }

bool is_nw_convex_geometric(const PathWord& w) {
  if (w.empty() || w[0] != '1' || w[w.size() - 1] != '1') return false;

  std::vector<LatticePoint> verts{{0, 0}};
  std::vector<std::int64_t> strip_height;  // height of the east step starting at x = k
  LatticePoint cur{0, 0};
  for (char c : w.bits()) {
    if (c == '0') {
      strip_height.push_back(cur.y);
      ++cur.x;
    } else {
      ++cur.y;
    }
    verts.push_back(cur);
  }
  if (strip_height.empty()) return true;

  // Upper hull, left to right. Vertices arrive sorted by (x, y).
  std::vector<LatticePoint> upper;
  for (const auto& p : verts) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), p) >= 0) upper.pop_back();
    upper.push_back(p);
  }

  // H(k) >= h + 1 at integer abscissa k, evaluated exactly on the hull edge
  // spanning k (vertical hull edges are skipped; the top endpoint wins).
  std::size_t edge = 0;
  auto hull_at_least = [&](std::int64_t k, std::int64_t level) {
    while (edge + 1 < upper.size() && (upper[edge + 1].x < k || upper[edge + 1].x == upper[edge].x)) ++edge;
    const LatticePoint& a = upper[edge];
    const LatticePoint& b = upper[edge + 1];
    return (a.y - level) * (b.x - a.x) + (b.y - a.y) * (k - a.x) >= 0;
  };

  for (std::size_t k = 0; k < strip_height.size(); ++k) {
    const std::int64_t level = strip_height[k] + 1;
    const auto x = static_cast<std::int64_t>(k);
    const std::size_t saved = edge;
    const bool left = hull_at_least(x, level);
    const bool right = hull_at_least(x + 1, level);
    edge = saved;
    if (left && right) return false;
  }
  return true;
}

CountTable count_paths(std::size_t limit) {
  CountTable table;
  table.limit = limit;
  table.counts.assign(limit + 1, BigInt(0));
  table.counts[0] = 1;
  if (limit == 0) return table;
  const TotientTable phi = totient_sieve(limit);
  std::vector<BigInt>& c = table.counts;
  std::vector<BigInt> binom;
  for (std::size_t n = 1; n <= limit; ++n) {
    // (1 - z^n)^(-f) = sum_j C(f + j - 1, j) z^(n j)
    const std::uint64_t f = phi[n];
    const std::size_t jmax = limit / n;
    binom.assign(jmax + 1, BigInt(1));
    for (std::size_t j = 1; j <= jmax; ++j) binom[j] = binom[j - 1] * (f + j - 1) / j;
    for (std::size_t m = limit; m >= n; --m) {
      BigInt acc = c[m];
      for (std::size_t j = 1; j * n <= m; ++j) acc += binom[j] * c[m - j * n];
      c[m] = std::move(acc);
    }
  }
  return table;
}

std::string format_count_table(const CountTable& table) {
  std::ostringstream os;
  os << "n,count\n";
  for (std::size_t n = 0; n < table.counts.size(); ++n) os << n << ',' << table.counts[n] << '\n';
  return os.str();
}

std::vector<SegmentMultiset> enumerate_paths(std::size_t n) {
  if (n > kEnumerationLimit)
    throw std::invalid_argument("enumerate_paths: n = " + std::to_string(n) + " exceeds the guard of " +
                                std::to_string(kEnumerationLimit));
  std::vector<CoprimeSegment> segs;
  for (std::uint64_t len = 1; len <= n; ++len)
    for (std::uint64_t north = 1; north <= len; ++north)
      if (std::gcd(len - north, north) == 1) segs.push_back(CoprimeSegment::trusted(len - north, north));
  std::sort(segs.begin(), segs.end(), SteeperFirst{});
  std::vector<SegmentMultiset> out;
  std::vector<SegmentMultiset::Entry> chosen;
  enumerate_rec(segs, 0, n, chosen, out);
  return out;
}

bool is_digitally_convex(std::span<const Cell> cells) {
  if (cells.empty()) return true;
  std::set<Cell> present(cells.begin(), cells.end());
  std::vector<LatticePoint> corners;
  corners.reserve(4 * present.size());
  std::int64_t x0 = cells[0].x, x1 = cells[0].x, y0 = cells[0].y, y1 = cells[0].y;
  for (const Cell& c : present) {
    corners.push_back({c.x, c.y});
    corners.push_back({c.x + 1, c.y});
    corners.push_back({c.x, c.y + 1});
    corners.push_back({c.x + 1, c.y + 1});
    x0 = std::min(x0, c.x);
    x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y);
    y1 = std::max(y1, c.y);
  }
  const std::vector<LatticePoint> hull = convex_hull(std::move(corners));
  for (std::int64_t y = y0; y <= y1; ++y) {
    for (std::int64_t x = x0; x <= x1; ++x) {
      const bool in_hull = inside_convex(hull, {x, y}) && inside_convex(hull, {x + 1, y}) &&
                           inside_convex(hull, {x, y + 1}) && inside_convex(hull, {x + 1, y + 1});
      if (in_hull != present.contains(Cell{x, y})) return false;
    }
  }
  return true;
}

}  // namespace dcpgen
