#ifndef WSCK_MODULEVEC_HPP
#define WSCK_MODULEVEC_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "basis.hpp"

namespace wsck {

/// Element of a free C[d]-module on a graded basis: sum of c * d^k (e_id).
class ModuleVector {
 public:
  ModuleVector() = default;
  explicit ModuleVector(BasisPtr b) : basis_(std::move(b)) {}

  static ModuleVector unit(BasisPtr b, int id, int dpow = 0,
                           const Rational& c = Rational(1)) {
    ModuleVector v(std::move(b));
    v.add_term(dpow, id, c);
    return v;
  }

  const BasisPtr& basis() const { return basis_; }
  bool zero() const { return terms_.empty(); }
  const std::map<std::array<int, 2>, Rational>& terms() const {
    return terms_;
  }

  void add_term(int dpow, int id, const Rational& c) {
    if (dpow < 0) throw std::invalid_argument("negative d-power");
    std::array<int, 2> key{dpow, id};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_[key] = c;
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Rational coeff(int dpow, int id) const {
    auto it = terms_.find({dpow, id});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int ddegree() const {  // -1 for zero
    int d = -1;
    for (auto& [k, c] : terms_) d = std::max(d, k[0]);
    return d;
  }

  ModuleVector& operator+=(const ModuleVector& o) {
    merge(o, Rational(1));
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    merge(o, Rational(-1));
    return *this;
  }
  ModuleVector operator+(const ModuleVector& o) const {
    ModuleVector r = *this;
    r += o;
    return r;
  }
  ModuleVector operator-(const ModuleVector& o) const {
    ModuleVector r = *this;
    r -= o;
    return r;
  }
  ModuleVector operator*(const Rational& s) const {
    ModuleVector r(basis_);
    if (is_zero(s)) return r;
    for (auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  ModuleVector operator-() const { return *this * Rational(-1); }
  bool operator==(const ModuleVector& o) const { return terms_ == o.terms_; }

  // Left multiplication by d^p.
  ModuleVector dshift(int p) const {
    ModuleVector r(basis_);
    for (auto& [k, c] : terms_) r.terms_[{k[0] + p, k[1]}] = c;
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += rat_str(c);
      if (k[0] > 0) s += "*d^" + std::to_string(k[0]);
      s += "*" + (basis_ ? basis_->name(k[1]) : std::to_string(k[1]));
    }
    return s;
  }

 private:
  void merge(const ModuleVector& o, const Rational& s) {
    if (!basis_) basis_ = o.basis_;
    for (auto& [k, c] : o.terms_) add_term(k[0], k[1], c * s);
  }
  BasisPtr basis_;
  std::map<std::array<int, 2>, Rational> terms_;
};

/// Polynomial in a formal variable la with ModuleVector coefficients,
/// stored flat as (la-power, d-power, id) -> coeff.
class LambdaValued {
 public:
  LambdaValued() = default;
  explicit LambdaValued(BasisPtr b) : basis_(std::move(b)) {}

  const BasisPtr& basis() const { return basis_; }
  bool zero() const { return terms_.empty(); }
  const std::map<std::array<int, 3>, Rational>& terms() const {
    return terms_;
  }

  void add_term(int lpow, int dpow, int id, const Rational& c) {
    if (lpow < 0 || dpow < 0) throw std::invalid_argument("negative power");
    std::array<int, 3> key{lpow, dpow, id};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_[key] = c;
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }
  void add_vector(int lpow, const ModuleVector& v, const Rational& s = Rational(1)) {
    if (!basis_) basis_ = v.basis();
    for (auto& [k, c] : v.terms()) add_term(lpow, k[0], k[1], c * s);
  }

  LambdaValued& operator+=(const LambdaValued& o) {
    if (!basis_) basis_ = o.basis_;
    for (auto& [k, c] : o.terms_) add_term(k[0], k[1], k[2], c);
    return *this;
  }
  LambdaValued operator+(const LambdaValued& o) const {
    LambdaValued r = *this;
    r += o;
    return r;
  }
  LambdaValued operator-(const LambdaValued& o) const {
    LambdaValued r = *this;
    for (auto& [k, c] : o.terms_) r.add_term(k[0], k[1], k[2], -c);
    return r;
  }
  LambdaValued operator*(const Rational& s) const {
    LambdaValued r(basis_);
    if (is_zero(s)) return r;
    for (auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  bool operator==(const LambdaValued& o) const { return terms_ == o.terms_; }

  int lambda_degree() const {
    int d = -1;
    for (auto& [k, c] : terms_) d = std::max(d, k[0]);
    return d;
  }

  ModuleVector lambda_coeff(int j) const {
    ModuleVector v(basis_);
    for (auto& [k, c] : terms_)
      if (k[0] == j) v.add_term(k[1], k[2], c);
    return v;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += rat_str(c);
      if (k[0] > 0) s += "*la^" + std::to_string(k[0]);
      if (k[1] > 0) s += "*d^" + std::to_string(k[1]);
      s += "*" + (basis_ ? basis_->name(k[2]) : std::to_string(k[2]));
    }
    return s;
  }

 private:
  BasisPtr basis_;
  std::map<std::array<int, 3>, Rational> terms_;
};

/// Polynomial in two formal variables (la, mu) with ModuleVector coefficients.
class BiLambdaValued {
 public:
  BiLambdaValued() = default;
  explicit BiLambdaValued(BasisPtr b) : basis_(std::move(b)) {}

  bool zero() const { return terms_.empty(); }
  const std::map<std::array<int, 4>, Rational>& terms() const {
    return terms_;
  }

  void add_term(int lpow, int mpow, int dpow, int id, const Rational& c) {
    std::array<int, 4> key{lpow, mpow, dpow, id};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_[key] = c;
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  BiLambdaValued& operator+=(const BiLambdaValued& o) {
    if (!basis_) basis_ = o.basis_;
    for (auto& [k, c] : o.terms_) add_term(k[0], k[1], k[2], k[3], c);
    return *this;
  }
  BiLambdaValued operator-(const BiLambdaValued& o) const {
    BiLambdaValued r = *this;
    for (auto& [k, c] : o.terms_) r.add_term(k[0], k[1], k[2], k[3], -c);
    return r;
  }
  BiLambdaValued operator*(const Rational& s) const {
    BiLambdaValued r(basis_);
    if (is_zero(s)) return r;
    for (auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  bool operator==(const BiLambdaValued& o) const { return terms_ == o.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += rat_str(c) + "*la^" + std::to_string(k[0]) + "*mu^" +
           std::to_string(k[1]) + "*d^" + std::to_string(k[2]) + "*" +
           (basis_ ? basis_->name(k[3]) : std::to_string(k[3]));
    }
    return s;
  }

 private:
  BasisPtr basis_;
  std::map<std::array<int, 4>, Rational> terms_;
};

// Substitute la -> (-la - d) in p; d multiplies coefficients from the left.
inline LambdaValued subst_skew(const LambdaValued& p) {
  LambdaValued q(p.basis());
  for (auto& [k, c] : p.terms()) {
    int j = k[0];
    for (int r = 0; r <= j; ++r) {
      // (-la-d)^j = sum_r C(j,r) (-1)^j la^r d^(j-r)
      Rational coef = c * binom(j, r);
      if (j & 1) coef = -coef;
      q.add_term(r, k[1] + (j - r), k[2], coef);
    }
  }
  return q;
}

// Substitute the formal variable of p by la + mu.
inline BiLambdaValued subst_sum(const LambdaValued& p) {
  BiLambdaValued q(p.basis());
  for (auto& [k, c] : p.terms()) {
    int j = k[0];
    for (int r = 0; r <= j; ++r)
      q.add_term(r, j - r, k[1], k[2], c * binom(j, r));
  }
  return q;
}

// Multiply by (la + d)^l, d acting by left multiplication on coefficients.
inline LambdaValued mul_lambda_plus_d(const LambdaValued& p, int l) {
  if (l == 0) return p;
  LambdaValued q(p.basis());
  for (auto& [k, c] : p.terms())
    for (int r = 0; r <= l; ++r)
      q.add_term(k[0] + r, k[1] + (l - r), k[2], c * binom(l, r));
  return q;
}

// Multiply by (-la)^k.
inline LambdaValued mul_minus_lambda(const LambdaValued& p, int k) {
  if (k == 0) return p;
  LambdaValued q(p.basis());
  for (auto& [key, c] : p.terms())
    q.add_term(key[0] + k, key[1], key[2], (k & 1) ? Rational(-c) : c);
  return q;
}

}  // namespace wsck

#endif
