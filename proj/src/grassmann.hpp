#ifndef WSCK_GRASSMANN_HPP
#define WSCK_GRASSMANN_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace wsck {

// Subsets of {1..n} as bitmasks: index i <-> bit (i-1), stored ascending.
using XiMask = uint32_t;

inline int mask_size(XiMask m) { return std::popcount(m); }

inline std::string mask_str(XiMask m) {
  std::string s;
  for (int i = 1; m; ++i, m >>= 1)
    if (m & 1u) s += std::to_string(i);
  return s;
}

// Sign of xi_I * xi_J as (-1)^{#inversions} for disjoint I, J.
inline int concat_sign(XiMask I, XiMask J) {
  int inv = 0;
  for (int j = 0; J >> j; ++j)
    if ((J >> j) & 1u) inv += std::popcount(I >> (j + 1));
  return (inv & 1) ? -1 : 1;
}

/// Element of the Grassmann superalgebra Lambda(n) over Q.
class Grassmann {
 public:
  Grassmann() : n_(0) {}
  explicit Grassmann(int n) : n_(n) {
    if (n < 0 || n > 30) throw std::invalid_argument("Grassmann: bad n");
  }

  static Grassmann monomial(int n, XiMask I, const Rational& c = Rational(1)) {
    Grassmann g(n);
    if (!is_zero(c)) g.terms_[I] = c;
    return g;
  }
  static Grassmann one(int n) { return monomial(n, 0); }
  static Grassmann xi(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("xi index");
    return monomial(n, XiMask(1) << (i - 1));
  }

  int n() const { return n_; }
  bool zero() const { return terms_.empty(); }
  const std::map<XiMask, Rational>& terms() const { return terms_; }

  Rational coeff(XiMask I) const {
    auto it = terms_.find(I);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(XiMask I, const Rational& c) {
    auto it = terms_.find(I);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_[I] = c;
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Grassmann& operator+=(const Grassmann& o) {
    check_same(o);
    for (auto& [I, c] : o.terms_) add_term(I, c);
    return *this;
  }
  Grassmann& operator-=(const Grassmann& o) {
    check_same(o);
    for (auto& [I, c] : o.terms_) add_term(I, -c);
    return *this;
  }
  Grassmann operator+(const Grassmann& o) const {
    Grassmann r = *this;
    r += o;
    return r;
  }
  Grassmann operator-(const Grassmann& o) const {
    Grassmann r = *this;
    r -= o;
    return r;
  }
  Grassmann operator-() const {
    Grassmann r(n_);
    for (auto& [I, c] : terms_) r.terms_[I] = -c;
    return r;
  }
  Grassmann operator*(const Rational& s) const {
    Grassmann r(n_);
    if (is_zero(s)) return r;
    for (auto& [I, c] : terms_) r.terms_[I] = c * s;
    return r;
  }
  bool operator==(const Grassmann& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }

  friend Grassmann gmul(const Grassmann& x, const Grassmann& y) {
    x.check_same(y);
    Grassmann r(x.n_);
    for (auto& [I, a] : x.terms_)
      for (auto& [J, b] : y.terms_) {
        if (I & J) continue;  // repeated odd variable
        r.add_term(I | J, a * b * concat_sign(I, J));
      }
    return r;
  }

  // Odd derivation d/dxi_i.
  friend Grassmann gderiv(int i, const Grassmann& x) {
    if (i < 1 || i > x.n_) throw std::out_of_range("gderiv index");
    XiMask bit = XiMask(1) << (i - 1);
    Grassmann r(x.n_);
    for (auto& [I, c] : x.terms_) {
      if (!(I & bit)) continue;
      int sgn = (std::popcount(I & (bit - 1)) & 1) ? -1 : 1;
      r.add_term(I & ~bit, c * sgn);
    }
    return r;
  }

  // 0 = even, 1 = odd; nullopt for mixed-parity elements.
  std::optional<int> parity() const {
    std::optional<int> p;
    for (auto& [I, c] : terms_) {
      int q = mask_size(I) & 1;
      if (!p)
        p = q;
      else if (*p != q)
        return std::nullopt;
    }
    return p ? p : std::optional<int>(0);  // zero counts as even
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [I, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += rat_str(c);
      if (I) s += "*xi" + mask_str(I);
    }
    return s;
  }

 private:
  void check_same(const Grassmann& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Grassmann: mismatched n");
  }
  int n_;
  std::map<XiMask, Rational> terms_;
};

}  // namespace wsck

#endif
