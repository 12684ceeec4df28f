#include "dcpgen/christoffel.hpp"

#include <numeric>
#include <stdexcept>

namespace dcpgen {

CoprimeSegment::CoprimeSegment(std::uint64_t east, std::uint64_t north) : east_(east), north_(north) {
  if (north == 0) throw std::invalid_argument("CoprimeSegment: north count must be positive");
  if (std::gcd(east, north) != 1)
    throw std::invalid_argument("CoprimeSegment: (" + std::to_string(east) + "," + std::to_string(north) +
                                ") is not coprime");
}

PathWord::PathWord(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c == '0') {
      ++zeros_;
    } else if (c == '1') {
      ++ones_;
    } else {
      throw std::invalid_argument("PathWord: letters must be '0' or '1'");
    }
  }
}

void PathWord::push_back(bool north) {
  bits_.push_back(north ? '1' : '0');
  ++(north ? ones_ : zeros_);
}

void PathWord::append(const PathWord& other) {
  bits_ += other.bits_;
  zeros_ += other.zeros_;
  ones_ += other.ones_;
}

PathWord christoffel_word(const CoprimeSegment& seg) {
  const std::uint64_t len = seg.length();
  std::string bits(len, '0');
  // acc tracks i*north mod len; each wrap is one unit of floor(i*north/len).
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i < len; ++i) {
    acc += seg.north();
    if (acc >= len) {
      acc -= len;
      bits[i] = '1';
    }
  }
  return PathWord(std::move(bits));
}

PathWord christoffel_word(std::uint64_t east, std::uint64_t north) {
  return christoffel_word(CoprimeSegment(east, north));
}

bool is_christoffel_primitive(const PathWord& w) {
  if (w.empty() || w.ones() == 0) return false;
  if (std::gcd(w.zeros(), w.ones()) != 1) return false;
  return christoffel_word(CoprimeSegment::trusted(w.zeros(), w.ones())) == w;
}

bool is_christoffel_primitive(std::string_view bits) {
  try {
    return is_christoffel_primitive(PathWord(std::string(bits)));
  } catch (const std::invalid_argument&) {
    return false;
  }
}

__extension__ using Wide = unsigned __int128;

std::strong_ordering slope_compare(const CoprimeSegment& a, const CoprimeSegment& b) noexcept {
  if (a.east() == 0 || b.east() == 0) {
    // Only (0,1) has east == 0.
    return (a.east() == 0 ? 1 : 0) <=> (b.east() == 0 ? 1 : 0);
  }
  const auto lhs = static_cast<Wide>(a.north()) * b.east();
  const auto rhs = static_cast<Wide>(b.north()) * a.east();
  return lhs <=> rhs;
}

}  // namespace dcpgen
