#include "annihilation.hpp"

#include <stdexcept>

namespace wsck {

std::string AnnElement::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += rat_str(c) + "*" + alg_->gens->name(k[0]) + "t^" +
         std::to_string(k[1]);
  }
  return s;
}

AnnElement normalize_to_ann(const AlgebraPtr& alg, const ModuleVector& v,
                            int tshift) {
  AnnElement out(alg);
  for (auto& [k, c] : v.terms()) {
    int dpow = k[0];
    if (dpow > tshift) continue;  // falling factorial vanishes
    Rational fall(1);
    for (int q = 0; q < dpow; ++q) fall *= Rational(tshift - q);
    if (dpow & 1) fall = -fall;
    out.add_term(k[1], tshift - dpow, c * fall);
  }
  return out;
}

AnnElement ann_bracket(const AnnElement& x, const AnnElement& y) {
  const AlgebraPtr& alg = x.alg();
  if (!alg || alg != y.alg())
    throw std::invalid_argument("ann_bracket: mismatched algebras");
  AnnElement out(alg);
  for (auto& [kx, cx] : x.terms())
    for (auto& [ky, cy] : y.terms()) {
      const LambdaValued& t = alg->table[kx[0]][ky[0]];
      int i = kx[1], j = ky[1];
      for (int r = 0; r <= std::min(i, t.lambda_degree()); ++r) {
        ModuleVector cr = t.lambda_coeff(r);
        if (cr.zero()) continue;
        Rational coef = cx * cy * binom(i, r) * factorial(r);
        out += normalize_to_ann(alg, cr, i + j - r) * coef;
      }
    }
  return out;
}

ModuleVector ann_act(const ConformalModule& M, const AnnElement& x,
                     const ModuleVector& m) {
  ModuleVector out(M.basis);
  for (auto& [k, c] : x.terms()) {
    LambdaValued v = mod_act(M, ModuleVector::unit(M.alg->gens, k[0]), m);
    out += v.lambda_coeff(k[1]) * (c * factorial(k[1]));
  }
  return out;
}

AnnElement cartan_h(const AlgebraPtr& W, int i) {
  AnnElement h = AnnElement::unit(W, W->f_id(0), 1);
  if (i > 0) h += AnnElement::unit(W, W->w_id(XiMask(1) << (i - 1), i), 0);
  return h;
}

std::optional<std::vector<Rational>> weight_of(const ConformalModule& M,
                                               const ModuleVector& m) {
  if (m.zero()) return std::nullopt;
  const AlgebraPtr& W = M.alg;
  int n = W->n;
  std::vector<Rational> w;
  int lo = M.sl_based ? 1 : 0;
  for (int i = lo; i <= n; ++i) {
    ModuleVector hm = ann_act(M, cartan_h(W, i), m);
    Rational ev(0);
    bool set = false;
    for (auto& [k, c] : m.terms()) {
      Rational q = hm.coeff(k[0], k[1]) / c;
      if (!set) {
        ev = q;
        set = true;
      } else if (ev != q) {
        return std::nullopt;
      }
    }
    if (!(hm == m * ev)) return std::nullopt;
    w.push_back(ev);
  }
  return w;
}

// --- concrete oracle ---------------------------------------------------------

ConcreteDerivation::ConcreteDerivation(int n, int T)
    : n_(n), T_(T), parity_(0) {
  auto basis = std::make_shared<GradedBasis>();
  XiMask full = (n == 0) ? 0 : ((XiMask(1) << n) - 1);
  for (int m = 0; m <= T; ++m)
    for (XiMask I = 0;; ++I) {
      basis->add("t" + std::to_string(m) + "x" + mask_str(I),
                 mask_size(I) & 1);
      if (I == full) break;
    }
  basis_ = basis;
  cols_.assign(basis_->size(), ModuleVector(basis_));
  overflow_.assign(basis_->size(), 0);
}

int ConcreteDerivation::basis_index(int tpow, XiMask xi) const {
  return tpow * (1 << n_) + static_cast<int>(xi);
}

std::pair<int, XiMask> ConcreteDerivation::basis_key(int idx) const {
  return {idx / (1 << n_), static_cast<XiMask>(idx % (1 << n_))};
}

ConcreteDerivation ConcreteDerivation::from_coefficients(
    int n, int T, const SForm& a0, const std::vector<SForm>& ai, int parity) {
  ConcreteDerivation D(n, T);
  D.parity_ = parity;
  for (int idx = 0; idx < D.dim(); ++idx) {
    auto [m, I] = D.basis_key(idx);
    // D(t^m xi_I) = a0 * m t^{m-1} xi_I + sum_i a_i * t^m d_i(xi_I)
    SForm img(n);
    if (m > 0 && !a0.zero()) {
      FormKey k{};
      k.tpow = m - 1;
      k.xi = I;
      img += smul(a0, SForm::monomial(n, k)) * Rational(m);
    }
    Grassmann gI = Grassmann::monomial(n, I);
    for (int i = 1; i <= n; ++i) {
      if (ai[i - 1].zero()) continue;
      Grassmann dI = gderiv(i, gI);
      for (auto& [K, c] : dI.terms()) {
        FormKey k{};
        k.tpow = m;
        k.xi = K;
        img += smul(ai[i - 1], SForm::monomial(n, k)) * c;
      }
    }
    for (auto& [k, c] : img.terms()) {
      if (k.tpow > T) {
        D.overflow_[idx] = 1;
        continue;
      }
      D.cols_[idx].add_term(0, D.basis_index(k.tpow, k.xi), c);
    }
  }
  return D;
}

ConcreteDerivation ConcreteDerivation::from_ann(const AnnElement& x, int T) {
  const AlgebraPtr& alg = x.alg();
  int n = alg->n;
  ConcreteDerivation out(n, T);
  bool first = true;
  for (auto& [k, c] : x.terms()) {
    const GenInfo& gi = alg->info[k[0]];
    SForm a0(n);
    std::vector<SForm> ai(n, SForm(n));
    FormKey fk{};
    fk.tpow = k[1];
    fk.xi = gi.mask;
    SForm coeff = SForm::monomial(n, fk, c);
    if (gi.field)
      a0 = coeff;
    else
      ai[gi.i - 1] = coeff;
    ConcreteDerivation D = from_coefficients(
        n, T, a0, ai, (mask_size(gi.mask) + (gi.field ? 0 : 1)) & 1);
    if (first) {
      out = D;
      first = false;
    } else {
      if (out.parity_ != D.parity_)
        throw std::invalid_argument("from_ann: non-homogeneous element");
      for (int idx = 0; idx < out.dim(); ++idx) {
        out.cols_[idx] += D.cols_[idx];
        out.overflow_[idx] =
            static_cast<char>(out.overflow_[idx] | D.overflow_[idx]);
      }
    }
  }
  return out;
}

ConcreteDerivation oracle_commutator(const ConcreteDerivation& a,
                                     const ConcreteDerivation& b) {
  if (a.n_ != b.n_ || a.T_ != b.T_)
    throw std::invalid_argument("oracle_commutator: mismatched truncation");
  ConcreteDerivation out(a.n_, a.T_);
  out.parity_ = (a.parity_ + b.parity_) & 1;
  int sgn = ((a.parity_ & b.parity_) & 1) ? 1 : -1;
  for (int idx = 0; idx < out.dim(); ++idx) {
    bool ovf = a.overflowed(idx) || b.overflowed(idx);
    ModuleVector acc(a.basis_);
    // a(b(e)) - (-1)^{pa pb} b(a(e))
    for (auto& [k, c] : b.cols_[idx].terms()) {
      if (a.overflowed(k[1])) ovf = true;
      acc += a.cols_[k[1]] * c;
    }
    for (auto& [k, c] : a.cols_[idx].terms()) {
      if (b.overflowed(k[1])) ovf = true;
      acc += b.cols_[k[1]] * (c * sgn);
    }
    out.cols_[idx] = acc;
    out.overflow_[idx] = ovf ? 1 : 0;
  }
  return out;
}

bool ConcreteDerivation::masked_equal(const ConcreteDerivation& a,
                                      const ConcreteDerivation& b,
                                      int* skipped) {
  if (skipped) *skipped = 0;
  if (a.dim() != b.dim()) return false;
  for (int idx = 0; idx < a.dim(); ++idx) {
    if (a.overflowed(idx) || b.overflowed(idx)) {
      if (skipped) ++*skipped;
      continue;
    }
    if (!(a.cols_[idx] == b.cols_[idx])) return false;
  }
  return true;
}

OracleReport oracle_match(int n, int tmax, int T, bool flip_field_sign) {
  OracleReport rep;
  AlgebraPtr W = build_W(n);
  int N = W->rank();
  // the generator map, with an optional wrong sign on the Lambda(n)-part
  // (used by the mutation test that pins the field convention)
  auto flip = [&](const AnnElement& e) {
    if (!flip_field_sign) return e;
    AnnElement out(W);
    for (auto& [k, c] : e.terms())
      out.add_term(k[0], k[1], W->info[k[0]].field ? Rational(-c) : c);
    return out;
  };
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int i = 0; i <= tmax; ++i)
        for (int j = 0; i + j <= tmax; ++j) {
          AnnElement xa = AnnElement::unit(W, a, i);
          AnnElement xb = AnnElement::unit(W, b, j);
          AnnElement br = ann_bracket(xa, xb);
          ConcreteDerivation lhs = ConcreteDerivation::from_ann(flip(br), T);
          ConcreteDerivation rhs = oracle_commutator(
              ConcreteDerivation::from_ann(flip(xa), T),
              ConcreteDerivation::from_ann(flip(xb), T));
          int skipped = 0;
          ++rep.compared;
          if (!ConcreteDerivation::masked_equal(lhs, rhs, &skipped))
            rep.failures.push_back("oracle(" + W->gens->name(a) + "t^" +
                                   std::to_string(i) + "," +
                                   W->gens->name(b) + "t^" +
                                   std::to_string(j) + ")");
          rep.skipped += skipped;
        }
  return rep;
}

}  // namespace wsck
