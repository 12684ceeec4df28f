#include "dcpgen/dcp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "dcpgen/errors.hpp"

namespace dcpgen {

namespace {

// Direction of each letter in each quarter, indexed by the letter value.
constexpr Step kWn[2] = {Step::East, Step::North};
constexpr Step kNe[2] = {Step::South, Step::East};
constexpr Step kEs[2] = {Step::West, Step::South};
constexpr Step kSw[2] = {Step::North, Step::West};

LatticePoint advance(LatticePoint p, Step s) {
  switch (s) {
    case Step::East: ++p.x; break;
    case Step::North: ++p.y; break;
    case Step::West: --p.x; break;
    case Step::South: --p.y; break;
  }
  return p;
}

void append_quarter(std::vector<Step>& out, const PathWord& w, const Step (&map)[2]) {
  for (char c : w.bits()) out.push_back(map[c == '1']);
}

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::int64_t signed_diff(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
}

}  // namespace

bool closure_check(const PathWord& wn, const PathWord& ne, const PathWord& es, const PathWord& sw) {
  return wn.zeros() + ne.ones() == es.zeros() + sw.ones() && ne.zeros() + es.ones() == sw.zeros() + wn.ones();
}

Polyomino assemble_contour(PathWord wn, PathWord ne, PathWord es, PathWord sw) {
  if (!closure_check(wn, ne, es, sw)) throw std::invalid_argument("assemble_contour: the four paths do not close");
  Polyomino p;
  p.width = static_cast<std::int64_t>(wn.zeros() + ne.ones());
  p.height = static_cast<std::int64_t>(wn.ones() + sw.zeros());
  p.start = {0, static_cast<std::int64_t>(sw.zeros())};
  p.contour.reserve(wn.size() + ne.size() + es.size() + sw.size());
  append_quarter(p.contour, wn, kWn);
  append_quarter(p.contour, ne, kNe);
  append_quarter(p.contour, es, kEs);
  append_quarter(p.contour, sw, kSw);
  p.perimeter = p.contour.size();
  p.wn = std::move(wn);
  p.ne = std::move(ne);
  p.es = std::move(es);
  p.sw = std::move(sw);

  p.rows = cell_rows(p);
  for (const CellRow& r : p.rows) p.area += static_cast<std::uint64_t>(r.x_end - r.x_begin);
  return p;
}

std::vector<CellRow> cell_rows(const Polyomino& p) {
  constexpr std::int64_t kUnset = -1;
  std::vector<CellRow> rows(static_cast<std::size_t>(p.height), CellRow{0, kUnset, kUnset});
  LatticePoint cur = p.start;
  for (Step s : p.contour) {
    const LatticePoint next = advance(cur, s);
    if (s == Step::North || s == Step::South) {
      const std::int64_t y = std::min(cur.y, next.y);
      if (y < 0 || y >= p.height) throw InternalError("contour leaves its bounding box");
      CellRow& r = rows[static_cast<std::size_t>(y)];
      std::int64_t& edge = s == Step::North ? r.x_begin : r.x_end;
      if (edge != kUnset) throw InternalError("contour crosses a row twice");
      edge = cur.x;
    }
    cur = next;
  }
  if (cur != p.start) throw InternalError("contour does not close");
  for (std::size_t y = 0; y < rows.size(); ++y) {
    CellRow& r = rows[y];
    r.y = static_cast<std::int64_t>(y);
    if (r.x_begin == kUnset || r.x_end == kUnset || r.x_begin > r.x_end)
      throw InternalError("cell row " + std::to_string(y) + " has its right edge left of its left edge");
  }
  return rows;
}

std::vector<Cell> cell_list(const Polyomino& p) {
  std::vector<Cell> out;
  out.reserve(p.area);
  for (const CellRow& r : p.rows)
    for (std::int64_t x = r.x_begin; x < r.x_end; ++x) out.push_back({x, r.y});
  return out;
}

std::vector<LatticePoint> contour_vertices(const Polyomino& p) {
  std::vector<LatticePoint> out;
  out.reserve(p.contour.size() + 1);
  out.push_back(p.start);
  for (Step s : p.contour) out.push_back(advance(out.back(), s));
  return out;
}

SampleReport<Polyomino> sample_dcp(const GfContext& ctx, RngStream& rng, DcpMethod method, std::uint64_t trial_cap) {
  using Units = std::vector<SegmentMultiset::Entry>;
  Units u_wn, u_ne, u_es, u_sw;
  const double x2 = ctx.x() * ctx.x();

  for (std::uint64_t trial = 1; trial <= trial_cap; ++trial) {
    sample_multiset_units(ctx, rng, u_wn);
    sample_multiset_units(ctx, rng, u_ne);
    sample_multiset_units(ctx, rng, u_es);
    sample_multiset_units(ctx, rng, u_sw);
    if (method == DcpMethod::Collapsed) {
      // Drop the (0,1) units; with g the (0,1) multiplicities, closure reads
      //   g_ne - g_sw = d1,  g_es - g_wn = d2.
      // For independent Geometric(x) pairs, P(g - g' = d) is proportional
      // to x^|d|, and given the difference, min(g, g') is Geometric(x^2).
      struct Sums {
        std::uint64_t east = 0, north = 0;
      };
      auto strip = [](Units& u) {
        Sums s;
        std::erase_if(u, [](const SegmentMultiset::Entry& e) { return e.segment.east() == 0; });
        for (const auto& e : u) {
          s.east += e.multiplicity * e.segment.east();
          s.north += e.multiplicity * e.segment.north();
        }
        return s;
      };
      const Sums wn = strip(u_wn), ne = strip(u_ne), es = strip(u_es), sw = strip(u_sw);
      const std::int64_t d1 = signed_diff(es.east + sw.north, wn.east + ne.north);
      const std::int64_t d2 = signed_diff(sw.east + wn.north, ne.east + es.north);
      const double accept = std::pow(ctx.x(), static_cast<double>(std::llabs(d1) + std::llabs(d2)));
      if (rng.uniform() >= accept) continue;
      auto split = [&](Units& hi, Units& lo, std::int64_t d) {
        const std::uint64_t g_lo = sample_geometric(x2, rng) + static_cast<std::uint64_t>(std::max<std::int64_t>(0, -d));
        const std::uint64_t g_hi = static_cast<std::uint64_t>(static_cast<std::int64_t>(g_lo) + d);
        const CoprimeSegment vertical = CoprimeSegment::trusted(0, 1);
        if (g_lo > 0) lo.push_back({vertical, g_lo});
        if (g_hi > 0) hi.push_back({vertical, g_hi});
      };
      split(u_ne, u_sw, d1);
      split(u_es, u_wn, d2);
    }

    PathWord wn = assemble_path(SegmentMultiset(u_wn)), ne = assemble_path(SegmentMultiset(u_ne)),
             es = assemble_path(SegmentMultiset(u_es)), sw = assemble_path(SegmentMultiset(u_sw));
    if (!closure_check(wn, ne, es, sw)) {
      if (method == DcpMethod::Collapsed) throw InternalError("collapsed sampler produced an open contour");
      continue;
    }
    Polyomino p = assemble_contour(std::move(wn), std::move(ne), std::move(es), std::move(sw));
    const std::uint64_t size = p.perimeter;
    return {std::move(p), trial, size};
  }
  throw TrialCapExceeded("sample_dcp: no closing quadruple within " + std::to_string(trial_cap) + " trials",
                         trial_cap);
}

std::string render(const Polyomino& p, double scale) {
  constexpr double kMargin = 10.0;
  const double w = static_cast<double>(p.width) * scale + 2 * kMargin;
  const double h = static_cast<double>(p.height) * scale + 2 * kMargin;
  auto sx = [&](std::int64_t x) { return num(kMargin + static_cast<double>(x) * scale); };
  auto sy = [&](std::int64_t y) { return num(kMargin + static_cast<double>(p.height - y) * scale); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + ' ' + num(h) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<g fill=\"#bfbfbf\" stroke=\"none\">\n";
  for (const CellRow& r : p.rows) {
    if (r.x_begin == r.x_end) continue;
    out += "<rect x=\"" + sx(r.x_begin) + "\" y=\"" + sy(r.y + 1) + "\" width=\"" +
           num(static_cast<double>(r.x_end - r.x_begin) * scale) + "\" height=\"" + num(scale) + "\"/>\n";
  }
  out += "</g>\n";

  out += "<path fill=\"none\" stroke=\"black\" stroke-width=\"" + num(std::max(1.0, scale / 4)) + "\" d=\"M";
  LatticePoint cur = p.start;
  out += sx(cur.x) + ' ' + sy(cur.y);
  for (std::size_t i = 0; i < p.contour.size();) {
    std::size_t j = i;
    while (j < p.contour.size() && p.contour[j] == p.contour[i]) cur = advance(cur, p.contour[j++]);
    if (j < p.contour.size()) out += " L" + sx(cur.x) + ' ' + sy(cur.y);
    i = j;
  }
  out += " Z\"/>\n</svg>\n";
  return out;
}

}  // namespace dcpgen
