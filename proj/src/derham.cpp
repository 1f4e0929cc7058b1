#include "derham.hpp"

#include <functional>
#include <stdexcept>

namespace wsck {

namespace {

// enumerate form monomials of degree <= jmax (tpow = 0)
std::vector<FormKey> form_keys(int n, int jmax) {
  std::vector<FormKey> keys;
  XiMask full = (n == 0) ? 0 : ((XiMask(1) << n) - 1);
  for (XiMask I = 0;; ++I) {
    for (int deg = 0; deg <= jmax; ++deg) {
      // without dt: |beta| = deg
      FormKey base{};
      base.xi = I;
      std::vector<FormKey> tmp;
      std::function<void(int, int, FormKey)> rec = [&](int i, int left,
                                                       FormKey k) {
        if (i > n) {
          if (left == 0) tmp.push_back(k);
          return;
        }
        for (int b = 0; b <= left; ++b) {
          FormKey k2 = k;
          k2.dxi[i - 1] = static_cast<uint8_t>(b);
          rec(i + 1, left - b, k2);
        }
      };
      rec(1, deg, base);
      for (auto k : tmp) keys.push_back(k);
      // with dt: |beta| = deg - 1
      if (deg >= 1) {
        tmp.clear();
        rec(1, deg - 1, base);
        for (auto k : tmp) {
          k.dt = 1;
          keys.push_back(k);
        }
      }
    }
    if (I == full) break;
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

// the Laurent derivation of the annihilation element (W_n generator) t^j
FormDerivation laurent_field(const ConformalAlgebra& W, int gen, int j) {
  int n = W.n;
  const GenInfo& gi = W.info[gen];
  SForm a0(n);
  std::vector<SForm> ai(n, SForm(n));
  FormKey k{};
  k.tpow = j;
  k.xi = gi.mask;
  if (gi.field)
    a0 = SForm::monomial(n, k);
  else
    ai[gi.i - 1] = SForm::monomial(n, k);
  return field_form_derivation(n, a0, ai);
}

FormDerivation laurent_contraction_field(const ConformalAlgebra& W, int gen,
                                         int j) {
  int n = W.n;
  const GenInfo& gi = W.info[gen];
  SForm a0(n);
  std::vector<SForm> ai(n, SForm(n));
  FormKey k{};
  k.tpow = j;
  k.xi = gi.mask;
  if (gi.field)
    a0 = SForm::monomial(n, k);
  else
    ai[gi.i - 1] = SForm::monomial(n, k);
  return field_contraction(n, a0, ai);
}

}  // namespace

DeRhamComplex::DeRhamComplex(int n, int jmax) : n_(n), jmax_(jmax) {
  W_ = build_W(n);
  keys_ = form_keys(n, jmax);
  auto basis = std::make_shared<GradedBasis>();
  slice_ids_.assign(jmax + 1, {});
  for (int id = 0; id < static_cast<int>(keys_.size()); ++id) {
    const FormKey& k = keys_[id];
    index_[k] = id;
    std::string nm = "o";
    if (k.xi) nm += "x" + mask_str(k.xi);
    for (int i = 0; i < n; ++i)
      if (k.dxi[i])
        nm += "e" + std::to_string(i + 1) +
              (k.dxi[i] > 1 ? std::to_string(int(k.dxi[i])) : "");
    if (k.dt) nm += "dt";
    basis->add(nm, k.parity());
    slice_ids_[k.form_degree()].push_back(id);
  }
  mod_.alg = W_;
  mod_.basis = basis;
  mod_.act.assign(W_->rank(),
                  std::vector<LambdaValued>(basis->size(), LambdaValued(basis)));
  iota_.assign(W_->rank(),
               std::vector<LambdaValued>(basis->size(), LambdaValued(basis)));
  for (int g = 0; g < W_->rank(); ++g)
    for (int id = 0; id < basis->size(); ++id) {
      mod_.act[g][id] = act_table(g, id, false);
      iota_[g][id] = act_table(g, id, true);
    }
}

LambdaValued DeRhamComplex::act_table(int gen, int id, bool contraction) const {
  // (L_D)_la X = sum_j la^j/j! [class of L_{t^j D}(X t^{-1})]
  LambdaValued out(mod_.basis ? mod_.basis : BasisPtr{});
  SForm emb = SForm::monomial(n_, keys_[id]);
  FormKey tm1{};
  tm1.tpow = -1;
  emb = smul(SForm::monomial(n_, tm1), emb);
  for (int j = 0; j <= 3; ++j) {
    FormDerivation D = contraction ? laurent_contraction_field(*W_, gen, j)
                                   : laurent_field(*W_, gen, j);
    SForm img = keep_tpow_negative(apply_derivation(D, emb));
    if (img.zero()) continue;
    if (j >= 2)
      throw std::logic_error("derham action: unexpected la-degree");
    Rational inv = Rational(1) / factorial(j);
    for (auto& [k, c] : img.terms()) {
      int m = -k.tpow;  // >= 1
      FormKey base = k;
      base.tpow = 0;
      auto it = index_.find(base);
      if (it == index_.end())
        throw std::out_of_range("derham: degree overflow in action");
      Rational coef = c * inv / factorial(m - 1);
      out.add_term(j, m - 1, it->second, coef);
    }
  }
  return out;
}

ModuleVector DeRhamComplex::tilde_d(const ModuleVector& w) const {
  // dictionary transport of the Laurent d
  ModuleVector out(mod_.basis);
  for (auto& [kk, c] : w.terms()) {
    if (slice_of(kk[1]) >= jmax_)
      throw std::out_of_range("tilde_d: degree overflow");
    FormKey emb = keys_[kk[1]];
    emb.tpow = -1;
    SForm img = sform_d(SForm::monomial(n_, emb, c));
    for (auto& [k, v] : img.terms()) {
      int m = -k.tpow;
      FormKey base = k;
      base.tpow = 0;
      // same d-power bookkeeping as the action transport, shifted by the
      // ambient d^k of the input term
      out.add_term(kk[0] + m - 1, index_.at(base), v / factorial(m - 1));
    }
  }
  return out;
}

ModuleVector DeRhamComplex::tilde_d_literal(const ModuleVector& w) const {
  // d(w1 + w2 dt) = dw1 + (dw2)dt - (-1)^{p(w1)} d(w1 dt) with the exterior
  // d on Omega(n) only (no t), transported coefficient-wise
  ModuleVector out(mod_.basis);
  for (auto& [kk, c] : w.terms()) {
    const FormKey& key = keys_[kk[1]];
    if (key.form_degree() >= jmax_)
      throw std::out_of_range("tilde_d: degree overflow");
    SForm x = SForm::monomial(n_, key, c);
    if (!key.dt) {
      // dw1 part: exterior derivative in the xi/dxi variables
      SForm img = sform_d(x);
      for (auto& [k, v] : img.terms()) {
        if (k.dt) continue;  // the dt-producing part of sform_d is d(t)=0 here
        out.add_term(kk[0], index_.at(k), v);
      }
      // -(-1)^{p} d (w1 dt)
      FormKey kdt = key;
      kdt.dt = 1;
      int sgn = key.parity() ? 1 : -1;
      out.add_term(kk[0] + 1, index_.at(kdt), c * sgn);
    } else {
      FormKey bare = key;
      bare.dt = 0;
      SForm img = sform_d(SForm::monomial(n_, bare, c));
      for (auto& [k, v] : img.terms()) {
        if (k.dt) continue;
        FormKey kdt = k;
        kdt.dt = 1;
        // (dw2) dt: dxi-factors commute with dt, no sign
        out.add_term(kk[0], index_.at(kdt), v);
      }
    }
  }
  return out;
}

PolyMatrix DeRhamComplex::d_matrix(int j) const {
  const auto& src = slice_ids_[j];
  const auto& dst = slice_ids_[j + 1];
  std::map<int, int> dpos;
  for (int i = 0; i < static_cast<int>(dst.size()); ++i) dpos[dst[i]] = i;
  PolyMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (int c = 0; c < static_cast<int>(src.size()); ++c) {
    ModuleVector img = tilde_d(ModuleVector::unit(mod_.basis, src[c]));
    for (auto& [k, v] : img.terms()) {
      Poly& e = m.at(dpos.at(k[1]), c);
      e.set_coeff(k[0], e.coeff(k[0]) + v);
    }
  }
  return m;
}

LambdaValued DeRhamComplex::lie_derivative(const ModuleVector& D,
                                           const ModuleVector& w) const {
  return mod_act(mod_, D, w);
}

LambdaValued DeRhamComplex::contraction(const ModuleVector& D,
                                        const ModuleVector& w) const {
  LambdaValued out(mod_.basis);
  for (auto& [kd, cd] : D.terms())
    for (auto& [kw, cw] : w.terms()) {
      const LambdaValued& t = iota_[kd[1]][kw[1]];
      if (t.zero()) continue;
      LambdaValued v = mul_lambda_plus_d(mul_minus_lambda(t, kd[0]), kw[0]);
      out += v * (cd * cw);
    }
  return out;
}

ModuleVector DeRhamComplex::homotopy_K(const ModuleVector& w) const {
  ModuleVector out(mod_.basis);
  for (auto& [kk, c] : w.terms()) {
    FormKey key = keys_[kk[1]];
    if (!key.dxi[n_ - 1]) continue;
    key.dxi[n_ - 1] = static_cast<uint8_t>(key.dxi[n_ - 1] - 1);
    SForm rest = SForm::monomial(n_, key, c);
    SForm img = smul(SForm::monomial(n_, [&] {
                       FormKey xin{};
                       xin.xi = XiMask(1) << (n_ - 1);
                       return xin;
                     }()),
                     rest);
    for (auto& [k, v] : img.terms()) out.add_term(kk[0], index_.at(k), v);
  }
  return out;
}

ModuleVector DeRhamComplex::epsilon(const ModuleVector& w) const {
  ModuleVector out(mod_.basis);
  XiMask xin = XiMask(1) << (n_ - 1);
  for (auto& [kk, c] : w.terms()) {
    const FormKey& key = keys_[kk[1]];
    if ((key.xi & xin) || key.dxi[n_ - 1]) continue;
    out.add_term(kk[0], kk[1], c);
  }
  return out;
}

bool DeRhamComplex::cartan_identity_holds(int gen) const {
  int p = W_->parity(gen);
  ModuleVector D = ModuleVector::unit(W_->gens, gen);
  for (int id = 0; id < mod_.basis->size(); ++id) {
    if (slice_of(id) >= jmax_) continue;
    ModuleVector x = ModuleVector::unit(mod_.basis, id);
    // d(iota_D x)
    LambdaValued ix = contraction(D, x);
    LambdaValued term1(mod_.basis);
    for (int j = 0; j <= ix.lambda_degree(); ++j) {
      ModuleVector cj = ix.lambda_coeff(j);
      if (!cj.zero()) term1.add_vector(j, tilde_d(cj));
    }
    // (-1)^p iota_D (d x)
    LambdaValued term2 = contraction(D, tilde_d(x)) * Rational(p ? -1 : 1);
    LambdaValued rhs = term1 + term2;
    if (!(lie_derivative(D, x) == rhs)) return false;
  }
  return true;
}

bool DeRhamComplex::contraction_anticommutator_holds(int g1, int g2,
                                                     int* sign_used) const {
  // Variant 0 is the bare super sign (-1)^{p1 p2}; variant 1 treats the
  // contractions as operators of parity p(D)+1 and asks for their operator
  // super-commutator to vanish: i_1 i_2 - (-1)^{(p1+1)(p2+1)} i_2 i_1 = 0.
  int p1 = W_->parity(g1), p2 = W_->parity(g2);
  ModuleVector D1 = ModuleVector::unit(W_->gens, g1);
  ModuleVector D2 = ModuleVector::unit(W_->gens, g2);
  for (int variant = 0; variant < 2; ++variant) {
    int s = variant == 0 ? (((p1 & p2) & 1) ? -1 : 1)
                         : ((((p1 + 1) & (p2 + 1)) & 1) ? 1 : -1);
    bool ok = true;
    for (int id = 0; id < mod_.basis->size() && ok; ++id) {
      ModuleVector x = ModuleVector::unit(mod_.basis, id);
      // compose: iota_{D1}_la iota_{D2}_mu x + s iota_{D2}_mu iota_{D1}_la x
      BiLambdaValued acc;
      LambdaValued i2 = contraction(D2, x);
      for (int j = 0; j <= i2.lambda_degree(); ++j) {
        ModuleVector cj = i2.lambda_coeff(j);
        if (cj.zero()) continue;
        LambdaValued i1 = contraction(D1, cj);
        for (auto& [k, c] : i1.terms()) acc.add_term(k[0], j, k[1], k[2], c);
      }
      LambdaValued i1x = contraction(D1, x);
      for (int r = 0; r <= i1x.lambda_degree(); ++r) {
        ModuleVector dr = i1x.lambda_coeff(r);
        if (dr.zero()) continue;
        LambdaValued i2b = contraction(D2, dr);
        for (auto& [k, c] : i2b.terms())
          acc.add_term(r, k[0], k[1], k[2], c * s);
      }
      if (!acc.zero()) ok = false;
    }
    if (ok) {
      if (sign_used) *sign_used = variant;
      return true;
    }
  }
  return false;
}

ExactnessReport exactness_report(const DeRhamComplex& C) {
  ExactnessReport rep;
  int jmax = C.jmax();
  // d^2 = 0 wherever both applications stay inside the truncation
  rep.d_squared_zero = true;
  for (int id = 0; id < C.module().basis->size(); ++id) {
    if (C.slice_of(id) + 2 > jmax) continue;
    ModuleVector dd =
        C.tilde_d(C.tilde_d(ModuleVector::unit(C.module().basis, id)));
    if (!dd.zero()) rep.d_squared_zero = false;
  }

  std::vector<PolyMatrix> mats;
  for (int j = 0; j + 1 <= jmax; ++j) mats.push_back(C.d_matrix(j));

  // slice 0: kernel of d_0 is zero
  KernelImage k0 = kernel_image(mats[0]);
  rep.slice0_kernel_zero = k0.kernel.empty();

  // slice 1: ker(d_1)/im(d_0) = C[d]/(d) generated by the dt class
  {
    KernelImage k1 = kernel_image(mats[1]);
    int dim1 = static_cast<int>(C.slice_ids(1).size());
    PolyMatrix ker(dim1, static_cast<int>(k1.kernel.size()));
    for (int c = 0; c < ker.cols(); ++c)
      for (int r = 0; r < dim1; ++r) ker.at(r, c) = k1.kernel[c][r];
    SmithNF ksnf = smith_normal_form(ker);
    KernelImage i0 = kernel_image(mats[0]);
    // coordinates of the image generators in the kernel basis
    PolyMatrix coord(ker.cols(), static_cast<int>(i0.image.size()));
    bool ok = true;
    for (size_t g = 0; g < i0.image.size(); ++g) {
      auto x = solve_linear(ksnf, ker, i0.image[g]);
      if (!x) {
        ok = false;
        break;
      }
      for (int r = 0; r < ker.cols(); ++r) coord.at(r, static_cast<int>(g)) = (*x)[r];
    }
    if (ok) {
      CokernelInfo q = cokernel_info(coord);
      bool shape = q.free_rank == 0 && q.torsion.size() == 1 &&
                   q.torsion[0] == Poly::var();
      // and the class generator is the dt line: dt in ker, not in im,
      // d * dt in im
      FormKey dtk{};
      dtk.dt = 1;
      int dtid = C.index_of(dtk);
      std::vector<Poly> dtcol(dim1);
      const auto& ids = C.slice_ids(1);
      for (int r = 0; r < dim1; ++r)
        dtcol[r] = (ids[r] == dtid) ? Poly(1) : Poly();
      ModuleVector ddt = C.tilde_d(ModuleVector::unit(C.module().basis, dtid));
      bool dt_closed = ddt.zero();
      PolyMatrix im0(dim1, static_cast<int>(i0.image.size()));
      for (int c = 0; c < im0.cols(); ++c)
        for (int r = 0; r < dim1; ++r) im0.at(r, c) = i0.image[c][r];
      SmithNF isnf = smith_normal_form(im0);
      bool dt_not_exact = !in_column_span(isnf, im0, dtcol);
      std::vector<Poly> ddtcol = dtcol;
      for (auto& p : ddtcol) p = p * Poly::var();
      bool ddt_exact = in_column_span(isnf, im0, ddtcol);
      rep.slice1_cokernel_is_dt =
          shape && dt_closed && dt_not_exact && ddt_exact;
    }
  }

  for (int j = 2; j + 1 <= jmax; ++j) {
    KernelImage kj = kernel_image(mats[j]);
    int dimj = static_cast<int>(C.slice_ids(j).size());
    PolyMatrix ker(dimj, static_cast<int>(kj.kernel.size()));
    for (int c = 0; c < ker.cols(); ++c)
      for (int r = 0; r < dimj; ++r) ker.at(r, c) = kj.kernel[c][r];
    KernelImage klow = kernel_image(mats[j - 1]);
    PolyMatrix im(dimj, static_cast<int>(klow.image.size()));
    for (int c = 0; c < im.cols(); ++c)
      for (int r = 0; r < dimj; ++r) im.at(r, c) = klow.image[c][r];
    if (same_column_span(ker, im))
      rep.exact_slices.push_back(j);
    else
      rep.inexact_slices.push_back(j);
  }
  return rep;
}

// --- Laurent side ---------------------------------------------------------------

LaurentSlice::LaurentSlice(int n, int k, int T) : n_(n), k_(k), T_(T) {
  XiMask full = (n == 0) ? 0 : ((XiMask(1) << n) - 1);
  for (int m = 1; m <= T; ++m) {
    for (XiMask I = 0;; ++I) {
      // enumerate dxi exponents with |beta| + dt = k
      std::function<void(int, int, FormKey)> rec = [&](int i, int left,
                                                       FormKey key) {
        if (i > n) {
          if (left == 0) keys_.push_back(key);
          return;
        }
        for (int b = 0; b <= left; ++b) {
          FormKey k2 = key;
          k2.dxi[i - 1] = static_cast<uint8_t>(b);
          rec(i + 1, left - b, k2);
        }
      };
      FormKey base{};
      base.tpow = -m;
      base.xi = I;
      rec(1, k, base);
      if (k >= 1) {
        FormKey bdt = base;
        bdt.dt = 1;
        rec(1, k - 1, bdt);
      }
      if (I == full) break;
    }
  }
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  for (int i = 0; i < static_cast<int>(keys_.size()); ++i) index_[keys_[i]] = i;
}

SForm LaurentSlice::d_of(int idx, bool* flagged) const {
  SForm img = keep_tpow_negative(sform_d(SForm::monomial(n_, keys_[idx])));
  if (flagged) *flagged = !tpow_in_window(img, -T_, -1);
  return img;
}

SForm LaurentSlice::act(const FormDerivation& D, int idx, bool* flagged) const {
  SForm img = keep_tpow_negative(
      apply_derivation(D, SForm::monomial(n_, keys_[idx])));
  if (flagged) *flagged = !tpow_in_window(img, -T_, -1);
  return img;
}

namespace {

// dense kernel of a set of columns over Q: returns basis of combinations
std::vector<std::vector<Rational>> column_kernel(
    const std::vector<std::map<int, Rational>>& cols) {
  // rows: each output coordinate gives one linear equation
  std::map<int, std::map<int, Rational>> rows;
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (auto& [r, v] : cols[c]) rows[r][c] = v;
  // RREF over the column space
  std::map<int, int> pivots;
  std::vector<std::map<int, Rational>> red;
  for (auto& [r, row0] : rows) {
    std::map<int, Rational> row = row0;
    while (!row.empty()) {
      int c = row.begin()->first;
      auto it = pivots.find(c);
      if (it == pivots.end()) {
        Rational lead = row.begin()->second;
        for (auto& [cc, v] : row) v /= lead;
        for (auto& rr : red) {
          auto e = rr.find(c);
          if (e == rr.end()) continue;
          Rational f = e->second;
          for (auto& [cc, v] : row) {
            auto re = rr.find(cc);
            if (re == rr.end())
              rr[cc] = -f * v;
            else {
              re->second -= f * v;
              if (is_zero(re->second)) rr.erase(re);
            }
          }
        }
        pivots[c] = static_cast<int>(red.size());
        red.push_back(row);
        break;
      }
      Rational f = row.begin()->second;
      for (auto& [cc, v] : red[it->second]) {
        auto re = row.find(cc);
        if (re == row.end())
          row[cc] = -f * v;
        else {
          re->second -= f * v;
          if (is_zero(re->second)) row.erase(re);
        }
      }
    }
  }
  std::vector<std::vector<Rational>> out;
  for (int f = 0; f < static_cast<int>(cols.size()); ++f) {
    if (pivots.count(f)) continue;
    std::vector<Rational> x(cols.size(), Rational(0));
    x[f] = Rational(1);
    for (auto& [c, ridx] : pivots) {
      auto e = red[ridx].find(f);
      if (e != red[ridx].end()) x[c] = -e->second;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

// --- Omega^k_+ window and the dual maps ---------------------------------------

LaurentPlusSlice::LaurentPlusSlice(int n, int k, int T)
    : n_(n), k_(k), T_(T) {
  // The window keeps the d-invariant weight tpow + dt bounded by T, so each
  // retained weight-subcomplex is complete and no boundary classes appear.
  XiMask full = (n == 0) ? 0 : ((XiMask(1) << n) - 1);
  for (int m = 0; m <= T; ++m) {
    for (XiMask I = 0;; ++I) {
      std::function<void(int, int, FormKey)> rec = [&](int i, int left,
                                                       FormKey key) {
        if (i > n) {
          if (left == 0) keys_.push_back(key);
          return;
        }
        for (int b = 0; b <= left; ++b) {
          FormKey k2 = key;
          k2.dxi[i - 1] = static_cast<uint8_t>(b);
          rec(i + 1, left - b, k2);
        }
      };
      FormKey base{};
      base.tpow = m;
      base.xi = I;
      rec(1, k, base);
      if (k >= 1 && m + 1 <= T) {
        FormKey bdt = base;
        bdt.dt = 1;
        rec(1, k - 1, bdt);
      }
      if (I == full) break;
    }
  }
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  for (int i = 0; i < static_cast<int>(keys_.size()); ++i)
    index_[keys_[i]] = i;
}

std::vector<std::map<int, Rational>> LaurentPlusSlice::d_matrix(
    const LaurentPlusSlice& upper, std::vector<char>* flags) const {
  std::vector<std::map<int, Rational>> cols(dim());
  if (flags) flags->assign(dim(), 0);
  for (int c = 0; c < dim(); ++c) {
    SForm img = sform_d(SForm::monomial(n_, keys_[c]));
    for (auto& [k, v] : img.terms()) {
      auto it = upper.index_.find(k);
      if (it == upper.index_.end()) {
        if (flags) (*flags)[c] = 1;  // left the window
        continue;
      }
      cols[c][it->second] = v;
    }
  }
  return cols;
}

std::vector<std::map<int, Rational>> LaurentPlusSlice::d_sharp(
    const std::vector<std::map<int, Rational>>& dmat, int upper_dim) {
  // transpose: columns become the upper slice's dual coordinates
  std::vector<std::map<int, Rational>> out(upper_dim);
  for (int c = 0; c < static_cast<int>(dmat.size()); ++c)
    for (auto& [r, v] : dmat[c]) out[r][c] = v;
  return out;
}

ThetaReport theta_dsharp_report(int n, int k, int T) {
  // chain Theta^{k+2}_+ -> Theta^{k+1}_+ -> Theta^k_+, the duals of the
  // window-stable d-chain Omega^k_+ -> Omega^{k+1}_+ -> Omega^{k+2}_+
  LaurentPlusSlice s0(n, k, T), s1(n, k + 1, T), s2(n, k + 2, T);
  std::vector<char> f0, f1;
  auto d0 = s0.d_matrix(s1, &f0);
  auto d1 = s1.d_matrix(s2, &f1);
  auto sh1 = LaurentPlusSlice::d_sharp(d0, s1.dim());  // Theta^{k+1} -> Theta^k
  auto sh2 = LaurentPlusSlice::d_sharp(d1, s2.dim());  // Theta^{k+2} -> Theta^{k+1}

  ThetaReport rep;
  // d_sharp o d_sharp = 0
  rep.dsharp_squared_zero = true;
  for (int c = 0; c < static_cast<int>(sh2.size()); ++c) {
    std::map<int, Rational> acc;
    for (auto& [mid, v] : sh2[c])
      for (auto& [dst, w] : sh1[mid]) {
        acc[dst] += v * w;
        if (is_zero(acc[dst])) acc.erase(dst);
      }
    if (!acc.empty()) rep.dsharp_squared_zero = false;
  }
  // exactness at Theta^{k+1}: ker(sh1) = im(sh2) over Q
  auto ker = column_kernel(sh1);
  rep.kernel_dim = static_cast<int>(ker.size());
  // rank of sh2 via kernel dimension
  auto ker2 = column_kernel(sh2);
  rep.image_dim = static_cast<int>(sh2.size() - ker2.size());
  if (rep.kernel_dim == rep.image_dim) {
    // containment im(sh2) <= ker(sh1) follows from d_sharp^2 = 0
    rep.exact = rep.dsharp_squared_zero;
  }
  return rep;
}

int LaurentSlice::kernel_dim_unflagged() const {
  std::vector<std::map<int, Rational>> cols;
  std::map<FormKey, int> out_index;
  for (int i = 0; i < dim(); ++i) {
    bool fl = false;
    SForm img = d_of(i, &fl);
    if (fl) continue;
    std::map<int, Rational> col;
    for (auto& [k, v] : img.terms()) {
      auto it = out_index.find(k);
      int id;
      if (it == out_index.end()) {
        id = static_cast<int>(out_index.size());
        out_index[k] = id;
      } else {
        id = it->second;
      }
      col[id] = v;
    }
    cols.push_back(std::move(col));
  }
  return static_cast<int>(column_kernel(cols).size());
}

std::vector<SForm> LaurentSlice::kernel_mod_image(
    const LaurentSlice& lower) const {
  // kernel of d on unflagged columns of this slice
  std::vector<int> unflagged;
  std::vector<std::map<int, Rational>> cols;
  std::map<FormKey, int> out_index;
  auto outid = [&](const FormKey& k) {
    auto it = out_index.find(k);
    if (it != out_index.end()) return it->second;
    int id = static_cast<int>(out_index.size());
    out_index[k] = id;
    return id;
  };
  for (int i = 0; i < dim(); ++i) {
    bool fl = false;
    SForm img = d_of(i, &fl);
    if (fl) continue;
    unflagged.push_back(i);
    std::map<int, Rational> col;
    for (auto& [k, v] : img.terms()) col[outid(k)] = v;
    cols.push_back(std::move(col));
  }
  auto ker = column_kernel(cols);

  // image of d from the lower slice, expressed in this slice's coordinates,
  // restricted to unflagged source columns landing inside the window
  std::vector<std::map<int, Rational>> imcols;
  for (int i = 0; i < lower.dim(); ++i) {
    bool fl = false;
    SForm img = lower.d_of(i, &fl);
    if (fl) continue;
    std::map<int, Rational> col;
    for (auto& [k, v] : img.terms()) {
      auto it = index_.find(k);
      if (it == index_.end()) {
        fl = true;
        break;
      }
      col[it->second] = v;
    }
    if (!fl && !col.empty()) imcols.push_back(std::move(col));
  }

  // reduce the image, then reduce kernel vectors against it; survivors
  // represent ker/im classes
  std::map<int, int> pivots;
  std::vector<std::map<int, Rational>> red;
  auto reduce = [&](std::map<int, Rational> v,
                    bool insert) -> std::map<int, Rational> {
    while (!v.empty()) {
      int c = v.begin()->first;
      auto it = pivots.find(c);
      if (it == pivots.end()) {
        if (!insert) return v;
        Rational lead = v.begin()->second;
        for (auto& [cc, x] : v) x /= lead;
        pivots[c] = static_cast<int>(red.size());
        red.push_back(v);
        return {};
      }
      Rational f = v.begin()->second;
      for (auto& [cc, x] : red[it->second]) {
        auto re = v.find(cc);
        if (re == v.end())
          v[cc] = -f * x;
        else {
          re->second -= f * x;
          if (is_zero(re->second)) v.erase(re);
        }
      }
    }
    return v;
  };
  for (auto& col : imcols) reduce(col, true);

  std::vector<SForm> out;
  for (auto& kv : ker) {
    // expand the kernel combination into slice coordinates
    std::map<int, Rational> vec;
    for (size_t c = 0; c < kv.size(); ++c) {
      if (is_zero(kv[c])) continue;
      vec[unflagged[c]] += kv[c];
      if (is_zero(vec[unflagged[c]])) vec.erase(unflagged[c]);
    }
    auto rem = reduce(vec, false);
    if (rem.empty()) continue;
    reduce(rem, true);  // quotient representatives should be independent
    SForm f(n_);
    for (auto& [idx, v] : rem) f.add_term(keys_[idx], v);
    out.push_back(f);
  }
  return out;
}

}  // namespace wsck
