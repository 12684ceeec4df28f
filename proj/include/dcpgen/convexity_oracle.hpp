#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcpgen/boltzmann.hpp"
#include "dcpgen/christoffel.hpp"
#include "dcpgen/lattice.hpp"

namespace dcpgen {

using BigInt = boost::multiprecision::cpp_int;

/// Exact coefficients of S(z) = prod (1 - z^n)^(-phi(n)).
struct CountTable {
  std::size_t limit = 0;
  std::vector<BigInt> counts;  // counts[n] = number of NW-convex paths of size n
};

/// Lyndon factorization (Duval, order 0 < 1) of the word after its leading
/// '1'. Returns the factors if the word is NW-convex: every factor a
/// primitive Christoffel word, slopes non-increasing. std::nullopt otherwise.
std::optional<std::vector<PathWord>> nw_factorization(const PathWord& w);

bool is_nw_convex(const PathWord& w);

/// Independent check straight from the definition: the word starts and ends
/// with '1' and no unit cell fits between the path and the upper convex hull
/// of its vertices.
bool is_nw_convex_geometric(const PathWord& w);

/// Negative-binomial expansion of each factor, exact integers.
CountTable count_paths(std::size_t limit);

/// CSV: header "n,count", then one row per size.
std::string format_count_table(const CountTable& table);

inline constexpr std::size_t kEnumerationLimit = 14;

/// All multisets of size n, each in canonical slope order. n <= 14, else
/// std::invalid_argument.
std::vector<SegmentMultiset> enumerate_paths(std::size_t n);

/// Digital convexity from the definition: every lattice cell whose four
/// corners lie in the convex hull of the set (hull of all cell corners) is
/// in the set. Cells may be given in any order; duplicates are ignored.
bool is_digitally_convex(std::span<const Cell> cells);

}  // namespace dcpgen
