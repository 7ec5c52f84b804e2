#include "eulercert/permutation.hpp"

#include <numeric>

#include "eulercert/error.hpp"

namespace eulercert {

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) throw MalformedPermutation("permutation of degree 0");
  std::vector<bool> hit(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || hit[x]) {
      throw MalformedPermutation("image array is not a bijection on 0.." +
                                 std::to_string(images_.size() - 1));
    }
    hit[x] = true;
  }
}

Permutation Permutation::from_images(std::span<const long long> images) {
  std::vector<Point> out;
  out.reserve(images.size());
  for (long long x : images) {
    if (x < 0 || x >= static_cast<long long>(images.size())) {
      throw MalformedPermutation("image " + std::to_string(x) + " out of range for degree " +
                                 std::to_string(images.size()));
    }
    out.push_back(static_cast<Point>(x));
  }
  return Permutation(std::move(out));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
  Permutation p = identity(degree);
  for (const auto& cycle : cycles) {
    std::vector<Point> c(cycle);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree) throw MalformedPermutation("cycle point out of range");
      p.images_[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(p.images_));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(long long n) const {
  if (n < 0) return inverse().pow(-n);
  Permutation result = identity(degree());
  Permutation base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::size_t Permutation::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return i;
  }
  return images_.size();
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) throw DegreeMismatch("product of permutations of different degree");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = rhs.images_[images_[i]];
  return r;
}

Permutation Permutation::conjugate_by(const Permutation& g) const {
  // (g^-1 a g)(g(i)) = g(a(i))
  if (g.degree() != degree()) throw DegreeMismatch("conjugation by a permutation of different degree");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[g.images_[i]] = g.images_[images_[i]];
  return r;
}

bool Permutation::commutes_with(const Permutation& other) const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (other.images_[images_[i]] != images_[other.images_[i]]) return false;
  }
  return true;
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (j != i) out += ' ';
      out += std::to_string(j);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::size_t Permutation::hash() const {
  // FNV-1a over the image array.
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : images_) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace eulercert
