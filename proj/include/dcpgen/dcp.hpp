#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcpgen/boltzmann.hpp"
#include "dcpgen/christoffel.hpp"
#include "dcpgen/lattice.hpp"

namespace dcpgen {

enum class Step : char { East = 'E', North = 'N', West = 'W', South = 'S' };

/// Row y of a polyomino's cells is the interval [x_begin, x_end). The
/// interval is empty where a disconnected polyomino pinches to a width-0
/// corridor.
struct CellRow {
  std::int64_t y;
  std::int64_t x_begin;
  std::int64_t x_end;
};

/// A digitally convex polyomino built from four NW-convex words.
///
/// Every word is stored in the NW frame (0 = east, 1 = north). At assembly
/// the words are turned into the four clockwise quarters of the contour:
///   wn: 0 -> E, 1 -> N    (from W up to N)
///   ne: 1 -> E, 0 -> S    (from N to E)
///   es: 1 -> S, 0 -> W    (from E down to S)
///   sw: 1 -> W, 0 -> N    (from S back to W)
/// Coordinates are shifted so the bounding box starts at (0, 0).
struct Polyomino {
  PathWord wn, ne, es, sw;
  LatticePoint start;           // the W point, first vertex of the contour
  std::vector<Step> contour;    // clockwise unit steps
  std::vector<CellRow> rows;    // cells, one interval per row, bottom up
  std::uint64_t area = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::uint64_t perimeter = 0;
};

/// |wn|0 + |ne|1 == |es|0 + |sw|1 and |ne|0 + |es|1 == |sw|0 + |wn|1.
bool closure_check(const PathWord& wn, const PathWord& ne, const PathWord& es, const PathWord& sw);

/// Throws std::invalid_argument if closure fails, InternalError if the
/// contour does not come out as one left and one right chain.
Polyomino assemble_contour(PathWord wn, PathWord ne, PathWord es, PathWord sw);

/// Recomputes the rows from the contour.
std::vector<CellRow> cell_rows(const Polyomino& p);

/// The cells listed one by one, row-major.
std::vector<Cell> cell_list(const Polyomino& p);

/// Vertices visited by the contour, starting and ending at start.
std::vector<LatticePoint> contour_vertices(const Polyomino& p);

enum class DcpMethod {
  /// Four independent free paths, rejected until they close.
  Naive,
  /// Same law. The multiplicity of the vertical segment (0,1) in each path
  /// is an independent geometric variable, so it is drawn after the rest:
  /// the four remaining multisets are accepted with the probability that
  /// the geometric parts can close them, then those parts are drawn
  /// conditionally.
  Collapsed,
};

/// Boltzmann law on polyominoes: P(P) proportional to x^(perimeter - 4).
/// trials counts quadruple draws.
SampleReport<Polyomino> sample_dcp(const GfContext& ctx, RngStream& rng, DcpMethod method = DcpMethod::Collapsed,
                                   std::uint64_t trial_cap = kDefaultTrialCap);

/// SVG document: grey cells, black contour, `scale` pixels per unit and a
/// fixed 10 px margin. Deterministic.
std::string render(const Polyomino& p, double scale = 4.0);

}  // namespace dcpgen
