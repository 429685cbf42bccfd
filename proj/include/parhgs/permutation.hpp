#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parhgs {

using Point = std::uint16_t;

/// A permutation of {0, ..., degree-1} stored as its image array.
///
/// Products compose right to left: (a * b)(x) == a(b(x)), so groups act on
/// points from the left and conjugation is g * x * g.inverse().
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  explicit Permutation(std::vector<Point> images);
  Permutation(std::initializer_list<Point> images);

  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles);

  /// Accepts an image array "[1,0,3,2]" or cycle notation "(0 1)(2,3)".
  /// Cycle notation needs the degree; `one_based` shifts cycle points down.
  static Permutation parse(std::string_view text, std::size_t degree = 0,
                           bool one_based = false);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation pow(long long e) const;
  bool is_identity() const noexcept;
  std::uint64_t order() const;
  std::size_t fixed_points() const noexcept;

  /// Sorted cycle lengths, fixed points included.
  std::vector<std::size_t> cycle_type() const;

  std::string to_string() const;
  std::string to_cycles() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// 64-bit mix of a point span; shared by the element index tables.
std::uint64_t hash_points(std::span<const Point> pts) noexcept;

}  // namespace parhgs
