#include "superform.hpp"

#include <stdexcept>

namespace wsck {

std::string SForm::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += rat_str(c);
    if (k.tpow != 0) s += "*t^" + std::to_string(k.tpow);
    if (k.xi) s += "*xi" + mask_str(k.xi);
    for (int i = 0; i < 8; ++i)
      if (k.dxi[i]) {
        s += "*dxi" + std::to_string(i + 1);
        if (k.dxi[i] > 1) s += "^" + std::to_string(int(k.dxi[i]));
      }
    if (k.dt) s += "*dt";
  }
  return s;
}

SForm smul(const SForm& a, const SForm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("smul: mismatched n");
  SForm r(a.n());
  for (auto& [ka, ca] : a.terms())
    for (auto& [kb, cb] : b.terms()) {
      if (ka.dt && kb.dt) continue;
      if (ka.xi & kb.xi) continue;
      int sgn = concat_sign(ka.xi, kb.xi);
      if (ka.dt && (mask_size(kb.xi) & 1)) sgn = -sgn;
      FormKey k;
      k.tpow = ka.tpow + kb.tpow;
      k.xi = ka.xi | kb.xi;
      for (int i = 0; i < 8; ++i)
        k.dxi[i] = static_cast<uint8_t>(ka.dxi[i] + kb.dxi[i]);
      k.dt = static_cast<uint8_t>(ka.dt + kb.dt);
      r.add_term(k, ca * cb * sgn);
    }
  return r;
}

SForm apply_derivation(const FormDerivation& D, const SForm& w) {
  SForm out(D.n);
  for (auto& [k, c] : w.terms()) {
    // Walk the factors of t^a xi_{i1..is} dxi^beta dt^e, applying the super
    // Leibniz rule; the monomial products take care of reordering signs.
    auto emit = [&](const FormKey& prefix, const SForm& image,
                    const FormKey& suffix, const Rational& coef) {
      SForm term = smul(SForm::monomial(D.n, prefix),
                        smul(image, SForm::monomial(D.n, suffix)));
      out += term * coef;
    };

    std::vector<int> idx;
    for (int i = 1; i <= D.n; ++i)
      if (k.xi & (XiMask(1) << (i - 1))) idx.push_back(i);

    // t-block
    if (k.tpow != 0 && !D.im_t.zero()) {
      FormKey pre{};
      pre.tpow = k.tpow - 1;
      FormKey suf = k;
      suf.tpow = 0;
      emit(pre, D.im_t, suf, c * Rational(k.tpow));
    }
    // xi-block
    for (size_t r = 0; r < idx.size(); ++r) {
      const SForm& img = D.im_xi[idx[r] - 1];
      if (img.zero()) continue;
      Rational coef = c;
      if ((D.parity & 1) && (r & 1)) coef = -coef;
      FormKey pre{};
      pre.tpow = k.tpow;
      for (size_t q = 0; q < r; ++q) pre.xi |= XiMask(1) << (idx[q] - 1);
      FormKey suf{};
      for (size_t q = r + 1; q < idx.size(); ++q)
        suf.xi |= XiMask(1) << (idx[q] - 1);
      suf.dxi = k.dxi;
      suf.dt = k.dt;
      emit(pre, img, suf, coef);
    }
    // dxi-block: prefix parity is |I| mod 2
    int xi_par = mask_size(k.xi) & 1;
    for (int i = 1; i <= D.n; ++i) {
      if (!k.dxi[i - 1]) continue;
      const SForm& img = D.im_dxi[i - 1];
      if (img.zero()) continue;
      Rational coef = c * Rational(k.dxi[i - 1]);
      if ((D.parity & 1) && (xi_par & 1)) coef = -coef;
      FormKey pre = k;
      pre.dxi[i - 1] = static_cast<uint8_t>(pre.dxi[i - 1] - 1);
      pre.dt = 0;
      FormKey suf{};
      suf.dt = k.dt;
      emit(pre, img, suf, coef);
    }
    // dt-block
    if (k.dt && !D.im_dt.zero()) {
      Rational coef = c;
      if ((D.parity & 1) && (xi_par & 1)) coef = -coef;
      FormKey pre = k;
      pre.dt = 0;
      emit(pre, D.im_dt, FormKey{}, coef);
    }
  }
  return out;
}

SForm sform_d(const SForm& w) {
  int n = w.n();
  FormDerivation D;
  D.n = n;
  D.parity = 1;
  FormKey kt{};
  kt.dt = 1;
  D.im_t = SForm::monomial(n, kt);
  D.im_xi.resize(n, SForm(n));
  D.im_dxi.resize(n, SForm(n));
  for (int i = 1; i <= n; ++i) {
    FormKey kx{};
    kx.dxi[i - 1] = 1;
    D.im_xi[i - 1] = SForm::monomial(n, kx);
  }
  D.im_dt = SForm(n);
  return apply_derivation(D, w);
}

namespace {

int coeff_parity(const SForm& f, const std::string& what) {
  int p = f.parity();
  if (p < 0) throw std::invalid_argument("non-homogeneous " + what);
  return p;
}

}  // namespace

FormDerivation field_form_derivation(int n, const SForm& a0,
                                     const std::vector<SForm>& ai) {
  FormDerivation D;
  D.n = n;
  // field parity: p(a0 d_t) = p(a0), p(a_i d_i) = p(a_i) + 1
  int p = -1;
  if (!a0.zero()) p = coeff_parity(a0, "field coefficient");
  for (int i = 0; i < n; ++i)
    if (!ai[i].zero()) {
      int q = (coeff_parity(ai[i], "field coefficient") + 1) & 1;
      if (p < 0)
        p = q;
      else if (p != q)
        throw std::invalid_argument("non-homogeneous field");
    }
  D.parity = p < 0 ? 0 : p;
  D.im_t = a0;
  D.im_xi = ai;
  D.im_dxi.resize(n, SForm(n));
  int sgn = (D.parity & 1) ? -1 : 1;
  for (int i = 0; i < n; ++i) D.im_dxi[i] = sform_d(ai[i]) * Rational(sgn);
  D.im_dt = sform_d(a0) * Rational(sgn);
  return D;
}

FormDerivation field_contraction(int n, const SForm& a0,
                                 const std::vector<SForm>& ai) {
  FormDerivation D = field_form_derivation(n, a0, ai);
  // The Cartan identity L_D = d i_D + (-1)^{p(D)} i_D d together with the
  // convention D d = (-1)^{p(D)} d D forces the images to carry (-1)^{p(D)}:
  // on a generator x, L_D x = D(x) while d(i_D dx) evaluates to
  // (-1)^{p(D)} i_D(dx).
  int sgn = (D.parity & 1) ? -1 : 1;
  D.parity = (D.parity + 1) & 1;
  D.im_t = SForm(n);
  for (int i = 0; i < n; ++i) D.im_xi[i] = SForm(n);
  for (int i = 0; i < n; ++i) D.im_dxi[i] = ai[i] * Rational(sgn);
  D.im_dt = a0 * Rational(sgn);
  return D;
}

SForm keep_tpow_negative(const SForm& w) {
  SForm r(w.n());
  for (auto& [k, c] : w.terms())
    if (k.tpow < 0) r.add_term(k, c);
  return r;
}

bool tpow_in_window(const SForm& w, int lo, int hi) {
  for (auto& [k, c] : w.terms())
    if (k.tpow < lo || k.tpow > hi) return false;
  return true;
}

}  // namespace wsck
