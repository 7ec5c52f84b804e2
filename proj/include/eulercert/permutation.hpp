#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace eulercert {

using Point = std::uint16_t;

/// A permutation of {0, ..., degree-1} stored as its image array.
///
/// Products compose left to right: (a * b)(i) = b(a(i)), i.e. apply `a`
/// first. Conjugation follows the same convention, a^g = g^-1 * a * g.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t degree);

  /// Throws MalformedPermutation unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);
  static Permutation from_images(std::span<const long long> images);
  /// Disjoint cycles on `degree` points, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<Point>> cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(long long n) const;
  /// Least common multiple of the cycle lengths.
  std::uint64_t order() const;
  /// First point moved, or degree() for the identity.
  std::size_t first_moved() const;

  Permutation operator*(const Permutation& rhs) const;
  /// g^-1 * this * g
  Permutation conjugate_by(const Permutation& g) const;
  bool commutes_with(const Permutation& other) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  std::string cycle_string() const;
  std::size_t hash() const;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace eulercert
