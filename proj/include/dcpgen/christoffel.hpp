#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dcpgen {

/// A lattice step vector (east, north) with gcd(east, north) = 1 and
/// north >= 1. It codes one primitive Christoffel word; (0, 1) is the word "1".
class CoprimeSegment {
 public:
  /// Throws std::invalid_argument unless north >= 1 and the pair is coprime.
  CoprimeSegment(std::uint64_t east, std::uint64_t north);

  /// For callers that have already established coprimality.
  static constexpr CoprimeSegment trusted(std::uint64_t east, std::uint64_t north) noexcept {
    return CoprimeSegment(east, north, Trusted{});
  }

  constexpr std::uint64_t east() const noexcept { return east_; }
  constexpr std::uint64_t north() const noexcept { return north_; }
  constexpr std::uint64_t length() const noexcept { return east_ + north_; }

  friend constexpr bool operator==(const CoprimeSegment&, const CoprimeSegment&) = default;

 private:
  struct Trusted {};
  constexpr CoprimeSegment(std::uint64_t east, std::uint64_t north, Trusted) noexcept
      : east_(east), north_(north) {}

  std::uint64_t east_;
  std::uint64_t north_;
};

/// Binary word over {0,1}, 0 = east step, 1 = north step.
class PathWord {
 public:
  PathWord() = default;
  /// Throws std::invalid_argument on characters other than '0' and '1'.
  explicit PathWord(std::string bits);

  const std::string& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::size_t zeros() const noexcept { return zeros_; }
  std::size_t ones() const noexcept { return ones_; }
  char operator[](std::size_t i) const noexcept { return bits_[i]; }

  void push_back(bool north);
  void append(const PathWord& other);
  void reserve(std::size_t n) { bits_.reserve(n); }

  friend bool operator==(const PathWord& a, const PathWord& b) noexcept { return a.bits_ == b.bits_; }

 private:
  std::string bits_;
  std::size_t zeros_ = 0;
  std::size_t ones_ = 0;
};

/// Lower Christoffel word of the segment: the highest lattice path from (0,0)
/// to (east, north) that stays on or below the straight line between them.
/// Letter i (1-based) is '1' iff floor(i*north/len) > floor((i-1)*north/len).
PathWord christoffel_word(const CoprimeSegment& seg);

/// Checked overload; throws std::invalid_argument for a non-coprime pair.
PathWord christoffel_word(std::uint64_t east, std::uint64_t north);

bool is_christoffel_primitive(const PathWord& w);
bool is_christoffel_primitive(std::string_view bits);

/// Orders by slope north/east, with (0,1) as +infinity. Exact integer
/// cross-multiplication; two segments compare equal iff they are identical.
std::strong_ordering slope_compare(const CoprimeSegment& a, const CoprimeSegment& b) noexcept;

/// Strict weak ordering for sorting by decreasing slope.
struct SteeperFirst {
  bool operator()(const CoprimeSegment& a, const CoprimeSegment& b) const noexcept {
    return slope_compare(a, b) == std::strong_ordering::greater;
  }
};

}  // namespace dcpgen
