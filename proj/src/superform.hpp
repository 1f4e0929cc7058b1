#ifndef WSCK_SUPERFORM_HPP
#define WSCK_SUPERFORM_HPP

#include <array>
#include <compare>
#include <map>
#include <vector>

#include "grassmann.hpp"

namespace wsck {

// Monomial t^a xi_I (dxi)^beta dt^e in canonical factor order.
// t, dxi_i are even; xi_i, dt are odd.
struct FormKey {
  int tpow = 0;
  XiMask xi = 0;
  std::array<uint8_t, 8> dxi{};
  uint8_t dt = 0;
  auto operator<=>(const FormKey&) const = default;

  int parity() const { return (mask_size(xi) + dt) & 1; }
  int form_degree() const {
    int d = dt;
    for (auto b : dxi) d += b;
    return d;
  }
};

/// Element of C[t,t^-1] (x) Lambda(n) (x) C[dxi_1..dxi_n] (x) Lambda[dt].
class SForm {
 public:
  SForm() : n_(0) {}
  explicit SForm(int n) : n_(n) {}
  static SForm monomial(int n, const FormKey& k,
                        const Rational& c = Rational(1)) {
    SForm f(n);
    if (!is_zero(c)) f.terms_[k] = c;
    return f;
  }
  static SForm one(int n) { return monomial(n, FormKey{}); }

  int n() const { return n_; }
  bool zero() const { return terms_.empty(); }
  const std::map<FormKey, Rational>& terms() const { return terms_; }

  void add_term(const FormKey& k, const Rational& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_[k] = c;
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  SForm& operator+=(const SForm& o) {
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  SForm operator+(const SForm& o) const {
    SForm r = *this;
    r += o;
    return r;
  }
  SForm operator-(const SForm& o) const {
    SForm r = *this;
    for (auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
  }
  SForm operator*(const Rational& s) const {
    SForm r(n_);
    if (is_zero(s)) return r;
    for (auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  SForm operator-() const { return *this * Rational(-1); }
  bool operator==(const SForm& o) const { return terms_ == o.terms_; }

  // 0 = even, 1 = odd, -1 = mixed (zero counts as even)
  int parity() const {
    int p = -2;
    for (auto& [k, c] : terms_) {
      int q = k.parity();
      if (p == -2)
        p = q;
      else if (p != q)
        return -1;
    }
    return p == -2 ? 0 : p;
  }

  std::string str() const;

 private:
  int n_;
  std::map<FormKey, Rational> terms_;
};

// Product of canonical monomials; the only reordering sign comes from the
// second factor's xi-block crossing the first factor's dt and from the
// Grassmann product of the xi-blocks.
SForm smul(const SForm& a, const SForm& b);

/// Derivation data: parity and images of the generators t, xi_i, dxi_i, dt.
struct FormDerivation {
  int n = 0;
  int parity = 0;
  SForm im_t;
  std::vector<SForm> im_xi;   // 1-based: im_xi[i-1]
  std::vector<SForm> im_dxi;  // 1-based
  SForm im_dt;
};

SForm apply_derivation(const FormDerivation& D, const SForm& w);

/// Exterior differential: d t = dt, d xi_i = dxi_i, d dxi_i = d dt = 0.
SForm sform_d(const SForm& w);

/// Vector field a0 d_t + sum a_i d_i as a derivation acting on forms,
/// with D dx = (-1)^{p(D)} d(D x). Coefficients must make D homogeneous.
FormDerivation field_form_derivation(int n, const SForm& a0,
                                     const std::vector<SForm>& ai);

/// Contraction against the same field: eats dt into a0 and dxi_i into a_i,
/// kills functions; parity p(D) + 1.
FormDerivation field_contraction(int n, const SForm& a0,
                                 const std::vector<SForm>& ai);

// Truncations and projections used by the Laurent-side modules.
SForm keep_tpow_negative(const SForm& w);            // drop tpow >= 0
bool tpow_in_window(const SForm& w, int lo, int hi);  // all terms inside

}  // namespace wsck

#endif
