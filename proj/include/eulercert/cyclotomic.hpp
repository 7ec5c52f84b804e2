#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eulercert {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact element of a cyclotomic field Q(zeta_m).
///
/// Stored in canonical form: m is the conductor of the value (the least
/// modulus whose field contains it, never 2 mod 4) and the coefficients are
/// those of the power basis zeta_m^0 .. zeta_m^(phi(m)-1). Rationals have m = 1.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(Rational(0)) {}
  Cyclotomic(long long n) : Cyclotomic(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int n) : Cyclotomic(Rational(n)) {}        // NOLINT(google-explicit-constructor)
  explicit Cyclotomic(const Rational& r);

  /// zeta_n^k with zeta_n = exp(2 pi i / n).
  static Cyclotomic root_of_unity(std::uint64_t n, long long k = 1);
  /// Sum of coeff * zeta_m^exp; exponents may be any integers.
  static Cyclotomic from_terms(std::uint64_t m, const std::vector<std::pair<long long, Rational>>& terms);

  std::uint64_t modulus() const { return m_; }
  /// Nonzero coefficients of the canonical power basis.
  std::map<std::uint64_t, Rational> terms() const;

  bool is_zero() const;
  bool is_rational() const { return m_ == 1; }
  bool is_integer() const;
  /// True iff every canonical coefficient is an integer, i.e. the value lies in Z[zeta_m].
  bool is_algebraic_integer() const;
  /// Throws InvalidCharacter if the value is not rational.
  Rational to_rational() const;

  /// Complex conjugate.
  Cyclotomic conj() const { return galois(-1); }
  /// Image under zeta -> zeta^k; k must be coprime to the modulus.
  Cyclotomic galois(long long k) const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
  Cyclotomic scaled(const Rational& r) const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.m_ == b.m_ && a.c_ == b.c_; }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
  /// Total order on canonical forms (modulus, then coefficients); not a field order.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b);

  std::complex<double> approx() const;
  /// e.g. "3", "-1/2", "2*z8^1 + z8^3".
  std::string str() const;

 private:
  Cyclotomic(std::uint64_t m, std::vector<Rational> dense);  // dense has length m, any values

  std::uint64_t m_ = 1;
  std::vector<Rational> c_;  // length phi(m_)
};

std::uint64_t euler_phi(std::uint64_t n);
/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<long long>& cyclotomic_polynomial(std::uint64_t n);

}  // namespace eulercert
