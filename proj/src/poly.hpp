#ifndef WSCK_POLY_HPP
#define WSCK_POLY_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace wsck {

/// Univariate polynomial over Q in the formal variable d (dense, normalized).
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c) {
    if (!is_zero(c)) c_.push_back(c);
  }
  Poly(long v) : Poly(Rational(v)) {}

  static Poly monomial(int deg, const Rational& c = Rational(1)) {
    Poly p;
    if (is_zero(c)) return p;
    p.c_.assign(deg + 1, Rational(0));
    p.c_[deg] = c;
    return p;
  }
  static Poly var() { return monomial(1); }

  bool zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  const Rational& lead() const {
    if (zero()) throw std::logic_error("lead of zero poly");
    return c_.back();
  }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }
  void set_coeff(int i, const Rational& v) {
    if (i >= static_cast<int>(c_.size())) {
      if (is_zero(v)) return;
      c_.resize(i + 1, Rational(0));
    }
    c_[i] = v;
    normalize();
  }

  Poly operator+(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.normalize();
    return r;
  }
  Poly operator-(const Poly& o) const { return *this + (o * Rational(-1)); }
  Poly operator-() const { return *this * Rational(-1); }
  Poly operator*(const Rational& s) const {
    Poly r;
    if (is_zero(s)) return r;
    r.c_ = c_;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r;
    if (zero() || o.zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.normalize();
    return r;
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Exact division with remainder: *this = q*o + r, deg r < deg o.
  void divrem(const Poly& o, Poly& q, Poly& r) const {
    if (o.zero()) throw std::invalid_argument("poly division by zero");
    q = Poly();
    r = *this;
    while (!r.zero() && r.degree() >= o.degree()) {
      int d = r.degree() - o.degree();
      Rational f = r.lead() / o.lead();
      Poly t = monomial(d, f);
      q = q + t;
      r = r - t * o;
    }
  }
  bool divisible_by(const Poly& o) const {
    Poly q, r;
    divrem(o, q, r);
    return r.zero();
  }
  Poly operator/(const Poly& o) const {
    Poly q, r;
    divrem(o, q, r);
    if (!r.zero()) throw std::logic_error("inexact poly division");
    return q;
  }

  Poly monic() const {
    if (zero()) return *this;
    return *this * (Rational(1) / lead());
  }

  // Evaluate at a rational point.
  Rational eval(const Rational& x) const {
    Rational v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
  }

  std::string str() const {
    if (zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || c_[i] != Rational(1)) s += rat_str(c_[i]);
      if (i > 0) {
        if (c_[i] != Rational(1)) s += "*";
        s += "d";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void normalize() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.zero()) {
    Poly q, r;
    a.divrem(b, q, r);
    a = b;
    b = r;
  }
  return a.monic();
}

}  // namespace wsck

#endif
