#include "eulercert/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <utility>

#include "eulercert/error.hpp"

namespace eulercert {

namespace {

std::vector<std::uint64_t> primes_of(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 0;
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(n), new_r = static_cast<long long>(a % n);
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<long long>(n) : t);
}

std::uint64_t positive_mod(long long a, std::uint64_t m) {
  long long r = a % static_cast<long long>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
}

// Nonzero coefficients of Phi_m below the leading term.
const std::vector<std::pair<std::size_t, long long>>& sparse_phi(std::uint64_t m) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<std::pair<std::size_t, long long>>> cache;
  const auto& poly = cyclotomic_polynomial(m);
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) {
    std::vector<std::pair<std::size_t, long long>> s;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      if (poly[i] != 0) s.emplace_back(i, poly[i]);
    }
    it = cache.emplace(m, std::move(s)).first;
  }
  return it->second;
}

// Reduces a dense vector (exponents 0..len-1) modulo Phi_m to length phi(m).
std::vector<Rational> reduce(std::uint64_t m, std::vector<Rational> dense) {
  const std::size_t phi = euler_phi(m);
  const auto& low = sparse_phi(m);
  for (std::size_t e = dense.size(); e-- > phi;) {
    if (dense[e] == 0) continue;
    const Rational t = dense[e];
    const std::size_t shift = e - phi;
    for (const auto& [i, coeff] : low) dense[shift + i] -= t * coeff;
    dense[e] = 0;
  }
  dense.resize(phi);
  return dense;
}

// Embeds a canonical vector for modulus d into modulus m (d | m), reduced.
std::vector<Rational> lift(std::uint64_t d, const std::vector<Rational>& c, std::uint64_t m) {
  if (d == m) return c;
  std::vector<Rational> dense(m);
  const std::uint64_t step = m / d;
  for (std::size_t j = 0; j < c.size(); ++j) dense[j * step] = c[j];
  return reduce(m, std::move(dense));
}

// Averages over Gal(Q(zeta_m)/Q(zeta_d)) with d = m/q and expresses the result
// in the power basis of Q(zeta_d).
std::vector<Rational> trace_down(std::uint64_t m, const std::vector<Rational>& c, std::uint64_t q) {
  const std::uint64_t d = m / q;
  std::vector<Rational> dense(d);
  if (d % q == 0) {
    for (std::size_t j = 0; j < c.size(); j += q) dense[j / q] += c[j];
  } else {
    const std::uint64_t u = mod_inverse(q, d);
    const Rational off(-1, static_cast<long long>(q - 1));
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      const std::size_t e = d == 1 ? 0 : (j * u) % d;
      dense[e] += (j % q == 0) ? c[j] : c[j] * off;
    }
  }
  return reduce(d, std::move(dense));
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t out = n;
  for (std::uint64_t p : primes_of(n)) out = out / p * (p - 1);
  return out;
}

const std::vector<long long>& cyclotomic_polynomial(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<long long>> cache;
  if (n == 0) throw Error("cyclotomic polynomial of order 0");
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<long long> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const long long t = num[i];
      quot[i - dd] = t;
      for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= t * den[k];
    }
    num = std::move(quot);
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(num)).first->second;
}

Cyclotomic::Cyclotomic(const Rational& r) : m_(1), c_{r} {}

Cyclotomic::Cyclotomic(std::uint64_t m, std::vector<Rational> dense) : m_(m), c_(reduce(m, std::move(dense))) {
  bool shrunk = true;
  while (shrunk && m_ > 1) {
    shrunk = false;
    if (std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; })) {
      c_.resize(1);
      m_ = 1;
      break;
    }
    for (std::uint64_t q : primes_of(m_)) {
      std::vector<Rational> down = trace_down(m_, c_, q);
      if (lift(m_ / q, down, m_) == c_) {
        m_ /= q;
        c_ = std::move(down);
        shrunk = true;
        break;
      }
    }
  }
}

Cyclotomic Cyclotomic::root_of_unity(std::uint64_t n, long long k) { return from_terms(n, {{k, Rational(1)}}); }

Cyclotomic Cyclotomic::from_terms(std::uint64_t m, const std::vector<std::pair<long long, Rational>>& terms) {
  if (m == 0) throw Error("cyclotomic modulus must be positive");
  std::vector<Rational> dense(m);
  for (const auto& [e, coeff] : terms) dense[positive_mod(e, m)] += coeff;
  return Cyclotomic(m, std::move(dense));
}

std::map<std::uint64_t, Rational> Cyclotomic::terms() const {
  std::map<std::uint64_t, Rational> out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) out.emplace(i, c_[i]);
  }
  return out;
}

bool Cyclotomic::is_zero() const { return m_ == 1 && c_[0] == 0; }

bool Cyclotomic::is_integer() const { return m_ == 1 && denominator(c_[0]) == 1; }

bool Cyclotomic::is_algebraic_integer() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return denominator(x) == 1; });
}

Rational Cyclotomic::to_rational() const {
  if (m_ != 1) throw InvalidCharacter("value " + str() + " is not rational");
  return c_[0];
}

Cyclotomic Cyclotomic::galois(long long k) const {
  if (m_ == 1) return *this;
  const std::uint64_t kk = positive_mod(k, m_);
  if (std::gcd(kk, m_) != 1) throw Error("Galois exponent not coprime to the modulus");
  std::vector<Rational> dense(m_);
  for (std::size_t j = 0; j < c_.size(); ++j) dense[(j * kk) % m_] = c_[j];
  return Cyclotomic(m_, std::move(dense));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ == b.m_ && a.m_ == 1) return Cyclotomic(a.c_[0] + b.c_[0]);
  const std::uint64_t l = std::lcm(a.m_, b.m_);
  std::vector<Rational> dense(l);
  for (std::size_t j = 0; j < a.c_.size(); ++j) dense[j * (l / a.m_)] += a.c_[j];
  for (std::size_t j = 0; j < b.c_.size(); ++j) dense[j * (l / b.m_)] += b.c_[j];
  return Cyclotomic(l, std::move(dense));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ == 1) return b.scaled(a.c_[0]);
  if (b.m_ == 1) return a.scaled(b.c_[0]);
  const std::uint64_t l = std::lcm(a.m_, b.m_);
  const std::uint64_t sa = l / a.m_, sb = l / b.m_;
  std::vector<Rational> dense(l);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      dense[(i * sa + j * sb) % l] += a.c_[i] * b.c_[j];
    }
  }
  return Cyclotomic(l, std::move(dense));
}

Cyclotomic Cyclotomic::scaled(const Rational& r) const {
  if (r == 0) return Cyclotomic();
  Cyclotomic out = *this;
  for (auto& x : out.c_) x *= r;
  return out;
}

bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ != b.m_) return a.m_ < b.m_;
  return a.c_ < b.c_;
}

std::complex<double> Cyclotomic::approx() const {
  std::complex<double> z = 0;
  const double two_pi = 2 * std::acos(-1.0);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    z += c_[j].convert_to<double>() * std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(m_));
  }
  return z;
}

std::string Cyclotomic::str() const {
  if (m_ == 1) return c_[0].str();
  std::string out;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    std::string term;
    const std::string root = j == 0 ? "" : "z" + std::to_string(m_) + "^" + std::to_string(j);
    if (j == 0) {
      term = c_[j].str();
    } else if (c_[j] == 1) {
      term = root;
    } else if (c_[j] == -1) {
      term = "-" + root;
    } else {
      term = c_[j].str() + "*" + root;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace eulercert
