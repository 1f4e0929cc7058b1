#include "conformal.hpp"

#include <stdexcept>

namespace wsck {

namespace {

// Apply the field xi_I d_i to a Grassmann element.
Grassmann field_apply(int n, XiMask mask, int i, const Grassmann& g) {
  return gmul(Grassmann::monomial(n, mask), gderiv(i, g));
}

Grassmann element_apply(const ConformalAlgebra& A,
                        const std::map<std::pair<XiMask, int>, Rational>& fld,
                        const Grassmann& g) {
  Grassmann out(A.n);
  for (auto& [key, c] : fld) out += field_apply(A.n, key.first, key.second, g) * c;
  return out;
}

}  // namespace

AlgebraPtr build_W(int n) {
  if (n < 0) throw std::invalid_argument("build_W: n >= 0 required");
  auto alg = std::make_shared<ConformalAlgebra>();
  alg->kind = "W";
  alg->n = n;
  auto basis = std::make_shared<GradedBasis>();
  XiMask full = (n == 0) ? 0 : ((XiMask(1) << n) - 1);

  // W(n)-part xi_I d_i, parity |I|+1; then Lambda(n)-part xi_I, parity |I|.
  for (XiMask I = 0; I <= full; ++I) {
    for (int i = 1; i <= n; ++i) {
      int id = basis->add("x" + mask_str(I) + "d" + std::to_string(i),
                          (mask_size(I) + 1) & 1);
      alg->info.push_back({false, I, i});
      alg->wid_[{I, i}] = id;
    }
    if (n == 0) break;
  }
  for (XiMask I = 0; I <= full; ++I) {
    int id = basis->add("f" + mask_str(I), mask_size(I) & 1);
    alg->info.push_back({true, I, 0});
    alg->fid_[I] = id;
    if (n == 0) break;
  }
  alg->gens = basis;

  int N = basis->size();
  alg->table.assign(N, std::vector<LambdaValued>(N, LambdaValued(basis)));

  auto add_grassmann_as_fpart = [&](LambdaValued& dst, const Grassmann& g,
                                    int lpow, int dpow, const Rational& s) {
    for (auto& [K, c] : g.terms()) dst.add_term(lpow, dpow, alg->f_id(K), c * s);
  };
  auto add_grassmann_as_wpart = [&](LambdaValued& dst, const Grassmann& g,
                                    int i, int lpow, const Rational& s) {
    for (auto& [K, c] : g.terms())
      dst.add_term(lpow, 0, alg->w_id(K, i), c * s);
  };

  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      const GenInfo& ga = alg->info[a];
      const GenInfo& gb = alg->info[b];
      LambdaValued val(basis);
      int pa = alg->parity(a), pb = alg->parity(b);
      int sign_ab = ((pa & pb) & 1) ? -1 : 1;

      if (!ga.field && !gb.field) {
        // [a_la b] = [a, b], the super-commutator of derivations.
        for (int l = 1; l <= n; ++l) {
          Grassmann xl = Grassmann::xi(n, l);
          Grassmann cl =
              field_apply(n, ga.mask, ga.i, field_apply(n, gb.mask, gb.i, xl)) -
              field_apply(n, gb.mask, gb.i, field_apply(n, ga.mask, ga.i, xl)) *
                  Rational(sign_ab);
          add_grassmann_as_wpart(val, cl, l, 0, Rational(1));
        }
      } else if (!ga.field && gb.field) {
        // [a_la f] = a(f) - (-1)^{p(a)p(f)} la f a.
        Grassmann af =
            field_apply(n, ga.mask, ga.i, Grassmann::monomial(n, gb.mask));
        add_grassmann_as_fpart(val, af, 0, 0, Rational(1));
        Grassmann fa = gmul(Grassmann::monomial(n, gb.mask),
                            Grassmann::monomial(n, ga.mask));
        add_grassmann_as_wpart(val, fa, ga.i, 1, Rational(-sign_ab));
      } else if (ga.field && gb.field) {
        // [f_la g] = -(d + 2 la) f g.
        Grassmann fg = gmul(Grassmann::monomial(n, ga.mask),
                            Grassmann::monomial(n, gb.mask));
        add_grassmann_as_fpart(val, fg, 0, 1, Rational(-1));
        add_grassmann_as_fpart(val, fg, 1, 0, Rational(-2));
      } else {
        // [f_la a] by skew-symmetry from [a_la f].
        continue;  // filled in a second pass
      }
      alg->table[a][b] = std::move(val);
    }
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (!(alg->info[a].field && !alg->info[b].field)) continue;
      int sign_ab = ((alg->parity(a) & alg->parity(b)) & 1) ? -1 : 1;
      alg->table[a][b] = subst_skew(alg->table[b][a]) * Rational(-sign_ab);
    }
  return alg;
}

AlgebraPtr build_Vir() {
  auto alg = std::make_shared<ConformalAlgebra>();
  alg->kind = "Vir";
  alg->n = 0;
  auto basis = std::make_shared<GradedBasis>();
  basis->add("L", 0);
  alg->gens = basis;
  alg->info.push_back({true, 0, 0});
  LambdaValued v(basis);
  v.add_term(0, 1, 0, Rational(1));  // d L
  v.add_term(1, 0, 0, Rational(2));  // 2 la L
  alg->table = {{v}};
  return alg;
}

LambdaValued bracket(const ConformalAlgebra& A, const ModuleVector& x,
                     const ModuleVector& y) {
  LambdaValued out(A.gens);
  for (auto& [kx, cx] : x.terms())
    for (auto& [ky, cy] : y.terms()) {
      const LambdaValued& t = A.table[kx[1]][ky[1]];
      if (t.zero()) continue;
      LambdaValued v = mul_lambda_plus_d(mul_minus_lambda(t, kx[0]), ky[0]);
      out += v * (cx * cy);
    }
  return out;
}

CheckReport check_skew(const ConformalAlgebra& A) {
  CheckReport rep;
  int N = A.rank();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      ++rep.checked;
      int s = ((A.parity(a) & A.parity(b)) & 1) ? -1 : 1;
      LambdaValued rhs = subst_skew(A.table[b][a]) * Rational(-s);
      if (!(A.table[a][b] == rhs))
        rep.failures.push_back("skew(" + A.gens->name(a) + "," +
                               A.gens->name(b) + ")");
    }
  return rep;
}

namespace {

BiLambdaValued nested_bracket(const ConformalAlgebra& A, int outer,
                              const LambdaValued& inner, bool outer_is_mu) {
  // [outer_la inner(mu-graded)] with the inner polynomial's variable kept
  // as the second slot; outer_is_mu swaps the roles.
  BiLambdaValued out(A.gens);
  ModuleVector gen = ModuleVector::unit(A.gens, outer);
  int jmax = inner.lambda_degree();
  for (int j = 0; j <= jmax; ++j) {
    ModuleVector cj = inner.lambda_coeff(j);
    if (cj.zero()) continue;
    LambdaValued br = bracket(A, gen, cj);
    for (auto& [k, c] : br.terms()) {
      if (outer_is_mu)
        out.add_term(j, k[0], k[1], k[2], c);
      else
        out.add_term(k[0], j, k[1], k[2], c);
    }
  }
  return out;
}

}  // namespace

bool jacobi_holds(const ConformalAlgebra& A, const ModuleVector& x,
                  const ModuleVector& y, const ModuleVector& z) {
  // Works for homogeneous x, y (parity sign from leading terms).
  auto parity_of = [&](const ModuleVector& v) {
    int p = -1;
    for (auto& [k, c] : v.terms()) {
      int q = A.parity(k[1]);
      if (p < 0)
        p = q;
      else if (p != q)
        throw std::invalid_argument("jacobi_holds: non-homogeneous element");
    }
    return p < 0 ? 0 : p;
  };
  int pa = parity_of(x), pb = parity_of(y);
  int s = ((pa & pb) & 1) ? -1 : 1;

  LambdaValued bc = bracket(A, y, z);
  BiLambdaValued lhs(A.gens);
  for (int j = 0; j <= bc.lambda_degree(); ++j) {
    ModuleVector cj = bc.lambda_coeff(j);
    if (cj.zero()) continue;
    LambdaValued br = bracket(A, x, cj);
    for (auto& [k, c] : br.terms()) lhs.add_term(k[0], j, k[1], k[2], c);
  }

  LambdaValued ac = bracket(A, x, z);
  BiLambdaValued rhs2(A.gens);
  for (int r = 0; r <= ac.lambda_degree(); ++r) {
    ModuleVector dr = ac.lambda_coeff(r);
    if (dr.zero()) continue;
    LambdaValued br = bracket(A, y, dr);
    for (auto& [k, c] : br.terms())
      rhs2.add_term(r, k[0], k[1], k[2], c * s);
  }

  LambdaValued ab = bracket(A, x, y);
  BiLambdaValued rhs1(A.gens);
  for (int j = 0; j <= ab.lambda_degree(); ++j) {
    ModuleVector ej = ab.lambda_coeff(j);
    if (ej.zero()) continue;
    LambdaValued u = bracket(A, ej, z);
    BiLambdaValued bi = subst_sum(u);
    for (auto& [k, c] : bi.terms()) rhs1.add_term(k[0] + j, k[1], k[2], k[3], c);
  }

  rhs1 += rhs2;
  return lhs == rhs1;
}

bool skew_holds(const ConformalAlgebra& A, const ModuleVector& x,
                const ModuleVector& y) {
  auto parity_of = [&](const ModuleVector& v) {
    int p = -1;
    for (auto& [k, c] : v.terms()) {
      int q = A.parity(k[1]);
      if (p < 0)
        p = q;
      else if (p != q)
        throw std::invalid_argument("skew_holds: non-homogeneous element");
    }
    return p < 0 ? 0 : p;
  };
  int s = ((parity_of(x) & parity_of(y)) & 1) ? -1 : 1;
  LambdaValued lhs = bracket(A, x, y);
  LambdaValued rhs = subst_skew(bracket(A, y, x)) * Rational(-s);
  return lhs == rhs;
}

CheckReport check_jacobi(const ConformalAlgebra& A) {
  CheckReport rep;
  int N = A.rank();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        ++rep.checked;
        if (!jacobi_holds(A, ModuleVector::unit(A.gens, a),
                          ModuleVector::unit(A.gens, b),
                          ModuleVector::unit(A.gens, c)))
          rep.failures.push_back("jacobi(" + A.gens->name(a) + "," +
                                 A.gens->name(b) + "," + A.gens->name(c) +
                                 ")");
      }
  return rep;
}

// --- divergence -------------------------------------------------------------

BasisPtr cur_basis(int n) {
  auto basis = std::make_shared<GradedBasis>();
  XiMask full = (n == 0) ? 0 : ((XiMask(1) << n) - 1);
  for (XiMask I = 0; I <= full; ++I) {
    basis->add("c" + mask_str(I), mask_size(I) & 1);
    if (n == 0) break;
  }
  return basis;
}

namespace {

BasisPtr cur_cache(const ConformalAlgebra& W) {
  static std::map<int, BasisPtr> cache;
  auto it = cache.find(W.n);
  if (it != cache.end()) return it->second;
  auto b = cur_basis(W.n);
  cache[W.n] = b;
  return b;
}

}  // namespace

ModuleVector div_deformed(const ConformalAlgebra& W, const ModuleVector& x,
                          const Rational& b) {
  BasisPtr cb = cur_cache(W);
  ModuleVector out(cb);
  for (auto& [k, c] : x.terms()) {
    const GenInfo& g = W.info[k[1]];
    if (!g.field) {
      Grassmann d = gderiv(g.i, Grassmann::monomial(W.n, g.mask));
      int sgn = (mask_size(g.mask) & 1) ? -1 : 1;  // (-1)^{p(coefficient)}
      for (auto& [K, cc] : d.terms())
        out.add_term(k[0], cb->find("c" + mask_str(K)), cc * c * sgn);
    } else {
      int id = cb->find("c" + mask_str(g.mask));
      out.add_term(k[0] + 1, id, -c);
      if (!is_zero(b)) out.add_term(k[0], id, b * c);
    }
  }
  return out;
}

ModuleVector div_conformal(const ConformalAlgebra& W, const ModuleVector& x) {
  return div_deformed(W, x, Rational(0));
}

PolyMatrix divergence_matrix(const ConformalAlgebra& W, const Rational& b) {
  int rows = 1 << W.n, cols = W.rank();
  PolyMatrix m(rows, cols);
  BasisPtr cb = cur_cache(W);
  for (int j = 0; j < cols; ++j) {
    ModuleVector d = div_deformed(W, ModuleVector::unit(W.gens, j), b);
    for (auto& [k, c] : d.terms()) {
      Poly& e = m.at(k[1], j);
      e.set_coeff(k[0], e.coeff(k[0]) + c);
    }
  }
  return m;
}

PolyMatrix grassmann_mult_matrix(const ConformalAlgebra& W,
                                 const Grassmann& g) {
  int N = W.rank();
  PolyMatrix m(N, N);
  for (int j = 0; j < N; ++j) {
    const GenInfo& gi = W.info[j];
    Grassmann prod = gmul(g, Grassmann::monomial(W.n, gi.mask));
    for (auto& [K, c] : prod.terms()) {
      int id = gi.field ? W.f_id(K) : W.w_id(K, gi.i);
      m.at(id, j).set_coeff(0, m.at(id, j).coeff(0) + c);
    }
  }
  return m;
}

std::vector<Poly> to_poly_column(const ModuleVector& v, int ngens) {
  std::vector<Poly> col(ngens);
  for (auto& [k, c] : v.terms())
    col[k[1]].set_coeff(k[0], col[k[1]].coeff(k[0]) + c);
  return col;
}

ModuleVector from_poly_column(const BasisPtr& basis,
                              const std::vector<Poly>& col) {
  ModuleVector v(basis);
  for (int i = 0; i < static_cast<int>(col.size()); ++i)
    for (int k = 0; k <= col[i].degree(); ++k)
      if (!is_zero(col[i].coeff(k))) v.add_term(k, i, col[i].coeff(k));
  return v;
}

ModuleVector s_generator(const ConformalAlgebra& W, XiMask f, int i) {
  ModuleVector v(W.gens);
  int sgn = (mask_size(f) & 1) ? -1 : 1;
  v.add_term(1, W.w_id(f, i), Rational(sgn));  // (-1)^{p(f)} d (f d_i)
  Grassmann df = gderiv(i, Grassmann::monomial(W.n, f));
  for (auto& [K, c] : df.terms()) v.add_term(0, W.f_id(K), c);  // + d_i f
  return v;
}

namespace {

ConformalSubalgebra make_sub(AlgebraPtr W, const std::string& kind,
                             const Rational& b, const PolyMatrix& opmat) {
  KernelImage ki = kernel_image(opmat);
  ConformalSubalgebra sub;
  sub.parent = W;
  sub.kind = kind;
  sub.b = b;
  int N = W->rank();
  sub.basis_matrix = PolyMatrix(N, static_cast<int>(ki.kernel.size()));
  for (int j = 0; j < static_cast<int>(ki.kernel.size()); ++j) {
    for (int i = 0; i < N; ++i) sub.basis_matrix.at(i, j) = ki.kernel[j][i];
    sub.basis.push_back(from_poly_column(W->gens, ki.kernel[j]));
  }
  return sub;
}

}  // namespace

ConformalSubalgebra build_S(int n) { return build_Sb(n, Rational(0)); }

ConformalSubalgebra build_Sb(int n, const Rational& b) {
  AlgebraPtr W = build_W(n);
  PolyMatrix m = divergence_matrix(*W, b);
  return make_sub(W, is_zero(b) ? "S" : "Sb", b, m);
}

ConformalSubalgebra build_Stilde(int n) {
  if (n % 2 != 0)
    throw std::invalid_argument("Stilde requires even n");
  AlgebraPtr W = build_W(n);
  XiMask full = (XiMask(1) << n) - 1;
  Grassmann one_plus = Grassmann::one(n);
  one_plus.add_term(full, Rational(1));
  PolyMatrix m = divergence_matrix(*W, Rational(0)) *
                 grassmann_mult_matrix(*W, one_plus);
  return make_sub(W, "Stilde", Rational(0), m);
}

CheckReport check_closure(const ConformalSubalgebra& S) {
  CheckReport rep;
  SmithNF snf = smith_normal_form(S.basis_matrix);
  int N = S.parent->rank();
  for (size_t a = 0; a < S.basis.size(); ++a)
    for (size_t b = 0; b < S.basis.size(); ++b) {
      ++rep.checked;
      LambdaValued br = bracket(*S.parent, S.basis[a], S.basis[b]);
      for (int j = 0; j <= br.lambda_degree(); ++j) {
        ModuleVector cj = br.lambda_coeff(j);
        if (cj.zero()) continue;
        if (!in_column_span(snf, S.basis_matrix, to_poly_column(cj, N))) {
          rep.failures.push_back("closure(" + std::to_string(a) + "," +
                                 std::to_string(b) + ")@la^" +
                                 std::to_string(j));
        }
      }
    }
  return rep;
}

}  // namespace wsck
