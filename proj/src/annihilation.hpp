#ifndef WSCK_ANNIHILATION_HPP
#define WSCK_ANNIHILATION_HPP

#include <optional>

#include "confmodule.hpp"
#include "superform.hpp"

namespace wsck {

/// Element of the annihilation algebra: finite sum of (generator) t^j, j >= 0.
class AnnElement {
 public:
  AnnElement() = default;
  explicit AnnElement(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static AnnElement unit(AlgebraPtr alg, int gen, int tpow,
                         const Rational& c = Rational(1)) {
    AnnElement e(std::move(alg));
    e.add_term(gen, tpow, c);
    return e;
  }

  const AlgebraPtr& alg() const { return alg_; }
  bool zero() const { return terms_.empty(); }
  const std::map<std::array<int, 2>, Rational>& terms() const {
    return terms_;
  }

  void add_term(int gen, int tpow, const Rational& c) {
    if (tpow < 0) return;  // annihilation algebra keeps t-powers >= 0
    std::array<int, 2> key{gen, tpow};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_[key] = c;
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  AnnElement& operator+=(const AnnElement& o) {
    if (!alg_) alg_ = o.alg_;
    for (auto& [k, c] : o.terms_) add_term(k[0], k[1], c);
    return *this;
  }
  AnnElement operator*(const Rational& s) const {
    AnnElement r(alg_);
    if (is_zero(s)) return r;
    for (auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  AnnElement operator-(const AnnElement& o) const {
    AnnElement r = *this;
    for (auto& [k, c] : o.terms_) r.add_term(k[0], k[1], -c);
    return r;
  }
  bool operator==(const AnnElement& o) const { return terms_ == o.terms_; }

  std::string str() const;

 private:
  AlgebraPtr alg_;
  std::map<std::array<int, 2>, Rational> terms_;
};

/// a t^s with a = sum c d^k g normalizes to sum c (-1)^k s!/(s-k)! g t^{s-k}.
AnnElement normalize_to_ann(const AlgebraPtr& alg, const ModuleVector& v,
                            int tshift);

/// [a t^i, b t^j] = sum_r C(i, r) (r! la^r-coeff of [a_la b]) t^{i+j-r}.
AnnElement ann_bracket(const AnnElement& x, const AnnElement& y);

/// (a t^j) m = j! (la^j-coefficient of a_la m), extended linearly.
ModuleVector ann_act(const ConformalModule& M, const AnnElement& x,
                     const ModuleVector& m);

/// Cartan elements h_0 = (1) t and h_i = h_0 + (xi_i d_i) t^0.
AnnElement cartan_h(const AlgebraPtr& W, int i);

/// Simultaneous eigenvalues (mu; la_1..la_n), or nullopt if m is not a joint
/// eigenvector. For sl-based modules the tuple is (la_1..la_n).
std::optional<std::vector<Rational>> weight_of(const ConformalModule& M,
                                               const ModuleVector& m);

// --- concrete oracle on C[t] (x) Lambda(n), truncated -----------------------

/// Derivation of C[t] (x) Lambda(n) as an exact matrix on the basis
/// {t^m xi_I : 0 <= m <= T} with per-column overflow flags.
class ConcreteDerivation {
 public:
  ConcreteDerivation(int n, int T);

  int n() const { return n_; }
  int T() const { return T_; }
  int dim() const { return static_cast<int>(cols_.size()); }
  int basis_index(int tpow, XiMask xi) const;
  std::pair<int, XiMask> basis_key(int idx) const;

  /// Build from coefficients: D = a0 d_t + sum_i a_i d_i.
  static ConcreteDerivation from_coefficients(int n, int T, const SForm& a0,
                                              const std::vector<SForm>& ai,
                                              int parity);

  /// Image of the annihilation element under xi_I t^j -> t^j xi_I d_t,
  /// xi_I d_i t^j -> t^j xi_I d_i.
  static ConcreteDerivation from_ann(const AnnElement& x, int T);

  const ModuleVector& column(int idx) const { return cols_[idx]; }
  bool overflowed(int idx) const { return overflow_[idx] != 0; }
  int parity() const { return parity_; }

  friend ConcreteDerivation oracle_commutator(const ConcreteDerivation& a,
                                              const ConcreteDerivation& b);

  /// Equality on columns where neither side overflowed; returns the number
  /// of skipped (masked) columns through `skipped`.
  static bool masked_equal(const ConcreteDerivation& a,
                           const ConcreteDerivation& b, int* skipped);

 private:
  int n_, T_, parity_;
  BasisPtr basis_;
  std::vector<ModuleVector> cols_;  // images of basis vectors (dpow unused)
  std::vector<char> overflow_;
};

struct OracleReport {
  long compared = 0;
  long skipped = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

/// ann_bracket vs. concrete commutators for all generator pairs and
/// t-powers i + j <= tmax, with overflow masking at truncation T.
OracleReport oracle_match(int n, int tmax, int T, bool flip_field_sign = false);

}  // namespace wsck

#endif
