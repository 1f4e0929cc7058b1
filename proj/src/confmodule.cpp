#include "confmodule.hpp"

#include <stdexcept>

namespace wsck {

LambdaValued mod_act(const ConformalModule& M, const ModuleVector& x,
                     const ModuleVector& m) {
  LambdaValued out(M.basis);
  for (auto& [kx, cx] : x.terms())
    for (auto& [km, cm] : m.terms()) {
      const LambdaValued& t = M.act[kx[1]][km[1]];
      if (t.zero()) continue;
      LambdaValued v = mul_lambda_plus_d(mul_minus_lambda(t, kx[0]), km[0]);
      out += v * (cx * cm);
    }
  return out;
}

namespace {

int element_parity(const ConformalAlgebra& A, const ModuleVector& v) {
  int p = -1;
  for (auto& [k, c] : v.terms()) {
    int q = A.parity(k[1]);
    if (p < 0)
      p = q;
    else if (p != q)
      throw std::invalid_argument("non-homogeneous algebra element");
  }
  return p < 0 ? 0 : p;
}

bool m2_pair_holds(const ConformalModule& M, const ModuleVector& x,
                   const ModuleVector& y, int vid) {
  const ConformalAlgebra& A = *M.alg;
  int s = ((element_parity(A, x) & element_parity(A, y)) & 1) ? -1 : 1;
  ModuleVector v = ModuleVector::unit(M.basis, vid);

  LambdaValued yv = mod_act(M, y, v);
  BiLambdaValued lhs;
  for (int j = 0; j <= yv.lambda_degree(); ++j) {
    ModuleVector mj = yv.lambda_coeff(j);
    if (mj.zero()) continue;
    LambdaValued xm = mod_act(M, x, mj);
    for (auto& [k, c] : xm.terms()) lhs.add_term(k[0], j, k[1], k[2], c);
  }
  LambdaValued xv = mod_act(M, x, v);
  for (int r = 0; r <= xv.lambda_degree(); ++r) {
    ModuleVector dr = xv.lambda_coeff(r);
    if (dr.zero()) continue;
    LambdaValued ym = mod_act(M, y, dr);
    for (auto& [k, c] : ym.terms())
      lhs.add_term(r, k[0], k[1], k[2], -c * s);
  }

  LambdaValued br = bracket(A, x, y);
  BiLambdaValued rhs;
  for (int j = 0; j <= br.lambda_degree(); ++j) {
    ModuleVector ej = br.lambda_coeff(j);
    if (ej.zero()) continue;
    LambdaValued u = mod_act(M, ej, v);
    BiLambdaValued bi = subst_sum(u);
    for (auto& [k, c] : bi.terms()) rhs.add_term(k[0] + j, k[1], k[2], k[3], c);
  }
  return lhs == rhs;
}

}  // namespace

CheckReport check_module_axioms(const ConformalModule& M) {
  CheckReport rep;
  int N = M.alg->rank();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int v = 0; v < M.basis->size(); ++v) {
        ++rep.checked;
        if (!m2_pair_holds(M, ModuleVector::unit(M.alg->gens, a),
                           ModuleVector::unit(M.alg->gens, b), v))
          rep.failures.push_back("M2(" + M.alg->gens->name(a) + "," +
                                 M.alg->gens->name(b) + ";" +
                                 M.basis->name(v) + ")");
      }
  return rep;
}

CheckReport check_module_axioms_restricted(
    const ConformalModule& M, const std::vector<ModuleVector>& elems) {
  CheckReport rep;
  for (size_t a = 0; a < elems.size(); ++a)
    for (size_t b = 0; b < elems.size(); ++b)
      for (int v = 0; v < M.basis->size(); ++v) {
        ++rep.checked;
        if (!m2_pair_holds(M, elems[a], elems[b], v))
          rep.failures.push_back("M2(S[" + std::to_string(a) + "],S[" +
                                 std::to_string(b) + "];" + M.basis->name(v) +
                                 ")");
      }
  return rep;
}

ConformalModule tens(const GlRep& V, AlgebraPtr W) {
  if (W->kind != "W") throw std::invalid_argument("tens: W_n algebra required");
  if (V.n != W->n) throw std::invalid_argument("tens: rank mismatch");
  int n = V.n;
  ConformalModule M;
  M.alg = W;
  M.sl_based = V.sl;
  M.rep = std::make_shared<GlRep>(V);
  auto basis = std::make_shared<GradedBasis>();
  XiMask full = (n == 0) ? 0 : ((XiMask(1) << n) - 1);

  for (XiMask I = 0; I <= full; ++I) {
    for (int s = 0; s < V.dim; ++s) {
      int par = (mask_size(I) + V.parity[s]) & 1;
      std::vector<Rational> w;
      if (!V.sl) {
        w.resize(n + 1);
        w[0] = V.weight[s][0];
        for (int i = 1; i <= n; ++i) {
          bool in = (I >> (i - 1)) & 1;
          w[i] = V.weight[s][i] + Rational(in ? 0 : -1);
        }
      } else {
        w.resize(n);
        for (int i = 1; i <= n; ++i) {
          bool in = (I >> (i - 1)) & 1;
          w[i - 1] = V.weight[s][i - 1] + Rational(in ? 0 : -1);
        }
      }
      int id = basis->add("x" + mask_str(I) + "*" + V.names[s], par, w);
      M.cell[{I, s}] = id;
    }
    if (n == 0) break;
  }
  M.basis = basis;
  M.bottom.assign(basis->size(), 0);
  for (int s = 0; s < V.dim; ++s) M.bottom[M.cell_id(full, s)] = 1;

  int N = W->rank();
  M.act.assign(N, std::vector<LambdaValued>(basis->size(), LambdaValued(basis)));

  auto add_g_tensor = [&](LambdaValued& dst, const Grassmann& g, int lpow,
                          int dpow, int s, const Rational& c) {
    for (auto& [K, ck] : g.terms()) dst.add_term(lpow, dpow, M.cell_id(K, s), ck * c);
  };

  for (int gid = 0; gid < N; ++gid) {
    const GenInfo& gi = W->info[gid];
    Grassmann coeff = Grassmann::monomial(n, gi.mask);
    for (XiMask J = 0; J <= full; ++J) {
      Grassmann g = Grassmann::monomial(n, J);
      for (int s = 0; s < V.dim; ++s) {
        LambdaValued& dst = M.act[gid][M.cell_id(J, s)];
        if (!gi.field) {
          // a = xi_I d_i:  a(g)(x)v + (-1)^{p(a)} sum_i' (d_i' xi_I) g (x)
          // (E_{i'i} - delta_{i'i}) v - la (-1)^{p(g)} xi_I g (x) E_{0i} v
          add_g_tensor(dst, gmul(coeff, gderiv(gi.i, g)), 0, 0, s, Rational(1));
          int pa = (mask_size(gi.mask) + 1) & 1;
          Rational spa(pa ? -1 : 1);
          for (int ip = 1; ip <= n; ++ip) {
            Grassmann dig = gmul(gderiv(ip, coeff), g);
            if (dig.zero()) continue;
            for (int u = 0; u < V.dim; ++u) {
              Rational e = V.mat(ip, gi.i)[u][s];
              if (ip == gi.i && u == s) e -= Rational(1);
              if (is_zero(e)) continue;
              add_g_tensor(dst, dig, 0, 0, u, e * spa);
            }
          }
          int pg = mask_size(J) & 1;
          Rational spg(pg ? 1 : -1);  // includes the leading minus
          Grassmann fg = gmul(coeff, g);
          if (!fg.zero())
            for (int u = 0; u < V.dim; ++u) {
              Rational e = V.mat(0, gi.i)[u][s];
              if (!is_zero(e)) add_g_tensor(dst, fg, 1, 0, u, e * spg);
            }
        } else {
          // f = xi_I:  -d(fg(x)v) + (-1)^{p(fg)} sum (d_i f) g (x) E_{i0} v
          //            + la (fg (x) E_00 v)
          Grassmann fg = gmul(coeff, g);
          if (!fg.zero()) {
            add_g_tensor(dst, fg, 0, 1, s, Rational(-1));
            for (int u = 0; u < V.dim; ++u) {
              Rational e = V.mat(0, 0)[u][s];
              if (!is_zero(e)) add_g_tensor(dst, fg, 1, 0, u, e);
            }
          }
          int pfg = (mask_size(gi.mask) + mask_size(J)) & 1;
          Rational spfg(pfg ? -1 : 1);
          for (int ip = 1; ip <= n; ++ip) {
            Grassmann dig = gmul(gderiv(ip, coeff), g);
            if (dig.zero()) continue;
            for (int u = 0; u < V.dim; ++u) {
              Rational e = V.mat(ip, 0)[u][s];
              if (!is_zero(e)) add_g_tensor(dst, dig, 0, 0, u, e * spfg);
            }
          }
        }
      }
      if (n == 0) break;
    }
  }
  return M;
}

ConformalModule twist(const ConformalModule& M, const Rational& alpha) {
  ConformalModule T = M;
  if (is_zero(alpha)) return T;
  T.alpha = M.alpha + alpha;
  for (auto& row : T.act)
    for (auto& val : row) {
      LambdaValued nv(M.basis);
      for (auto& [k, c] : val.terms()) {
        // d^w -> (d + alpha)^w
        for (int r = 0; r <= k[1]; ++r) {
          Rational pw(1);
          for (int q = 0; q < k[1] - r; ++q) pw *= alpha;
          nv.add_term(k[0], r, k[2], c * binom(k[1], r) * pw);
        }
      }
      val = nv;
    }
  return T;
}

ConformalModule conformal_dual(const ConformalModule& M) {
  ConformalModule D;
  D.alg = M.alg;
  int N = M.alg->rank();
  int dim = M.basis->size();
  D.act.assign(N, std::vector<LambdaValued>(dim));
  // (a_la m_i^*) = -(-1)^{p(a)(p(m_i)+1)} sum_j P_ji(la, -d-la) m_j^*
  for (int a = 0; a < N; ++a) {
    int pa = M.alg->parity(a);
    for (int i = 0; i < dim; ++i) {
      LambdaValued& dst = D.act[a][i];
      int sgn0 = ((pa & ((M.basis->parity(i) + 1) & 1)) & 1) ? 1 : -1;
      for (int j = 0; j < dim; ++j) {
        const LambdaValued& P = M.act[a][j];
        for (auto& [k, c] : P.terms()) {
          if (k[2] != i) continue;
          int u = k[0], w = k[1];
          // la^u (-d-la)^w = sum_r C(w,r) (-1)^w la^{u+w-r} d^r
          for (int r = 0; r <= w; ++r) {
            Rational coef = c * binom(w, r) * sgn0;
            if (w & 1) coef = -coef;
            dst.add_term(u + w - r, r, j, coef);
          }
        }
      }
    }
  }

  // Weight tags of the dual basis are read off the dual table itself: the
  // mu - la substitution shifts eigenvalues, so they are not just negated.
  auto basis = std::make_shared<GradedBasis>();
  bool tagged = M.basis->weights_complete() && M.alg->kind == "W";
  for (int i = 0; i < dim; ++i) {
    std::optional<std::vector<Rational>> w;
    if (tagged) {
      int n = M.alg->n;
      std::vector<Rational> tag;
      Rational mu(0);
      {
        const LambdaValued& t = D.act[M.alg->f_id(0)][i];
        for (auto& [k, c] : t.terms())
          if (k[0] == 1 && k[1] == 0 && k[2] == i) mu = c;
      }
      if (!M.sl_based) tag.push_back(mu);
      for (int q = 1; q <= n; ++q) {
        Rational diag(0);
        const LambdaValued& t =
            D.act[M.alg->w_id(XiMask(1) << (q - 1), q)][i];
        for (auto& [k, c] : t.terms())
          if (k[0] == 0 && k[1] == 0 && k[2] == i) diag = c;
        tag.push_back(mu + diag);
      }
      w = tag;
    }
    basis->add(M.basis->name(i) + "*", M.basis->parity(i), w);
  }
  // rebuild the table over the named basis
  D.basis = basis;
  for (auto& row : D.act)
    for (auto& val : row) {
      LambdaValued moved(basis);
      for (auto& [k, c] : val.terms()) moved.add_term(k[0], k[1], k[2], c);
      val = moved;
    }
  return D;
}

bool is_morphism(const ModuleMorphism& T) {
  const ConformalModule& M = *T.src;
  const ConformalModule& N = *T.dst;
  if (M.alg != N.alg && M.alg->kind != N.alg->kind) return false;
  auto apply_T = [&](const ModuleVector& v) {
    ModuleVector out(N.basis);
    for (auto& [k, c] : v.terms()) {
      for (int i = 0; i < T.matrix.rows(); ++i) {
        const Poly& p = T.matrix.at(i, k[1]);
        for (int w = 0; w <= p.degree(); ++w)
          if (!is_zero(p.coeff(w))) out.add_term(k[0] + w, i, c * p.coeff(w));
      }
    }
    return out;
  };
  for (int a = 0; a < M.alg->rank(); ++a) {
    int sgn = ((T.parity & M.alg->parity(a)) & 1) ? -1 : 1;
    for (int j = 0; j < M.basis->size(); ++j) {
      LambdaValued av = mod_act(M, ModuleVector::unit(M.alg->gens, a),
                                ModuleVector::unit(M.basis, j));
      LambdaValued lhs(N.basis);
      for (int l = 0; l <= av.lambda_degree(); ++l)
        lhs.add_vector(l, apply_T(av.lambda_coeff(l)));
      LambdaValued rhs =
          mod_act(N, ModuleVector::unit(N.alg->gens, a),
                  apply_T(ModuleVector::unit(M.basis, j))) *
          Rational(sgn);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

ModuleMorphism transpose(const ModuleMorphism& T) {
  ModuleMorphism Tt;
  Tt.src = std::make_shared<ConformalModule>(conformal_dual(*T.dst));
  Tt.dst = std::make_shared<ConformalModule>(conformal_dual(*T.src));
  Tt.parity = T.parity;
  int rows = T.matrix.cols(), cols = T.matrix.rows();
  Tt.matrix = PolyMatrix(rows, cols);
  // C_{ji}(d) = -A_{ij}(-d)
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < rows; ++j) {
      const Poly& p = T.matrix.at(i, j);
      Poly q;
      for (int w = 0; w <= p.degree(); ++w) {
        Rational c = p.coeff(w);
        if (w & 1) c = -c;
        q.set_coeff(w, -c);
      }
      Tt.matrix.at(j, i) = q;
    }
  return Tt;
}

ModuleMorphism submodule_from_basis(ModulePtr M,
                                    const std::vector<ModuleVector>& vecs,
                                    const std::vector<std::string>& names) {
  int dim = M->basis->size();
  PolyMatrix B(dim, static_cast<int>(vecs.size()));
  for (size_t j = 0; j < vecs.size(); ++j) {
    auto col = to_poly_column(vecs[j], dim);
    for (int i = 0; i < dim; ++i) B.at(i, j) = col[i];
  }
  SmithNF snf = smith_normal_form(B);

  auto sub = std::make_shared<ConformalModule>();
  sub->alg = M->alg;
  auto basis = std::make_shared<GradedBasis>();
  for (size_t j = 0; j < vecs.size(); ++j) {
    int par = -1;
    for (auto& [k, c] : vecs[j].terms()) {
      int q = M->basis->parity(k[1]);
      if (par < 0)
        par = q;
      else if (par != q)
        throw std::invalid_argument("submodule basis not parity-homogeneous");
    }
    basis->add(names[j], par < 0 ? 0 : par);
  }
  sub->basis = basis;
  int N = M->alg->rank();
  sub->act.assign(N, std::vector<LambdaValued>(vecs.size(), LambdaValued(basis)));
  for (int a = 0; a < N; ++a)
    for (size_t j = 0; j < vecs.size(); ++j) {
      LambdaValued av =
          mod_act(*M, ModuleVector::unit(M->alg->gens, a), vecs[j]);
      for (int l = 0; l <= av.lambda_degree(); ++l) {
        ModuleVector cl = av.lambda_coeff(l);
        if (cl.zero()) continue;
        auto x = solve_linear(snf, B, to_poly_column(cl, dim));
        if (!x)
          throw std::invalid_argument("family is not closed under the action");
        for (size_t u = 0; u < vecs.size(); ++u)
          for (int w = 0; w <= (*x)[u].degree(); ++w)
            if (!is_zero((*x)[u].coeff(w)))
              sub->act[a][j].add_term(l, w, static_cast<int>(u),
                                      (*x)[u].coeff(w));
      }
    }

  ModuleMorphism embed;
  embed.src = sub;
  embed.dst = M;
  embed.matrix = B;
  embed.parity = 0;
  return embed;
}

// --- W_1 family --------------------------------------------------------------

namespace {

// helper to fill one action value from a symbolic description
struct W1Builder {
  AlgebraPtr W = build_W(1);
  ConformalModule M;
  int g1, gxi, gd, gxd;

  explicit W1Builder(const std::vector<std::string>& names,
                     const std::vector<int>& parities,
                     const std::vector<std::vector<Rational>>& weights) {
    M.alg = W;
    auto basis = std::make_shared<GradedBasis>();
    for (size_t i = 0; i < names.size(); ++i)
      basis->add(names[i], parities[i], weights[i]);
    M.basis = basis;
    M.act.assign(W->rank(), std::vector<LambdaValued>(
                                names.size(), LambdaValued(basis)));
    g1 = W->f_id(0);
    gxi = W->f_id(1);
    gd = W->w_id(0, 1);
    gxd = W->w_id(1, 1);
  }

  // value = (c_la * la + c_d * d + c_0) target
  void set(int gen, const std::string& src, const std::string& dst,
           const Rational& c_la, const Rational& c_d, const Rational& c_0) {
    int j = M.basis->find(src), i = M.basis->find(dst);
    if (!is_zero(c_la)) M.act[gen][j].add_term(1, 0, i, c_la);
    if (!is_zero(c_d)) M.act[gen][j].add_term(0, 1, i, c_d);
    if (!is_zero(c_0)) M.act[gen][j].add_term(0, 0, i, c_0);
  }
};

}  // namespace

ConformalModule build_M_ab(const Rational& a, const Rational& b) {
  // basis v0, v1, w1 = d_1 v0, w0 = d_1 v1
  W1Builder B({"v0", "v1", "w1", "w0"}, {0, 1, 1, 0},
              {{a, a + b}, {a - 1, a + b}, {a, a + b - 1}, {a - 1, a + b - 1}});
  const Rational one(1), zero(0);
  // 1_la
  B.set(B.g1, "v0", "v0", a, rat(-1), zero);
  B.set(B.g1, "v1", "v1", a - 1, rat(-1), zero);
  B.set(B.g1, "w1", "w1", a, rat(-1), zero);
  B.set(B.g1, "w0", "w0", a - 1, rat(-1), zero);
  // xi_la
  B.set(B.gxi, "v0", "v1", zero, zero, one);
  B.set(B.gxi, "w1", "v0", a, rat(-1), zero);
  B.set(B.gxi, "w1", "w0", zero, zero, rat(-1));
  B.set(B.gxi, "w0", "v1", a - 1, rat(-1), zero);
  // d1_la
  B.set(B.gd, "v0", "w1", zero, zero, one);
  B.set(B.gd, "v1", "v0", a + b, zero, zero);
  B.set(B.gd, "v1", "w0", zero, zero, one);
  B.set(B.gd, "w0", "w1", -(a + b), zero, zero);
  // (xi d1)_la
  B.set(B.gxd, "v0", "v0", zero, zero, b);
  B.set(B.gxd, "v1", "v1", zero, zero, b + 1);
  B.set(B.gxd, "w1", "w1", zero, zero, b - 1);
  B.set(B.gxd, "w0", "v0", -(a + b), zero, zero);
  B.set(B.gxd, "w0", "w0", zero, zero, b);
  B.M.bottom = {1, 1, 0, 0};
  return B.M;
}

ModuleMorphism build_submodule_N(const Rational& b) {
  auto M = std::make_shared<ConformalModule>(build_M_ab(Rational(0), b));
  ModuleVector n1 = ModuleVector::unit(M->basis, M->basis->find("w1"));
  ModuleVector n2 = ModuleVector::unit(M->basis, M->basis->find("v0"), 1) +
                    ModuleVector::unit(M->basis, M->basis->find("w0"));
  return submodule_from_basis(M, {n1, n2}, {"n1", "n2"});
}

ConformalModule build_L0b(const Rational& b) {
  W1Builder B({"v0", "v1"}, {0, 1}, {{rat(0), b}, {rat(-1), b}});
  const Rational one(1), zero(0);
  B.set(B.g1, "v0", "v0", zero, rat(-1), zero);
  B.set(B.g1, "v1", "v1", rat(-1), rat(-1), zero);
  B.set(B.gxi, "v0", "v1", zero, zero, one);
  B.set(B.gd, "v1", "v0", b, rat(-1), zero);
  B.set(B.gxd, "v0", "v0", zero, zero, b);
  B.set(B.gxd, "v1", "v1", zero, zero, b + 1);
  B.M.bottom = {1, 1};
  return B.M;
}

ConformalModule build_La_minus_a(const Rational& a) {
  W1Builder B({"v0", "w1"}, {0, 1}, {{a, rat(0)}, {a, rat(-1)}});
  const Rational one(1), zero(0);
  B.set(B.g1, "v0", "v0", a, rat(-1), zero);
  B.set(B.g1, "w1", "w1", a, rat(-1), zero);
  B.set(B.gxi, "w1", "v0", a, rat(-1), zero);
  B.set(B.gd, "v0", "w1", zero, zero, one);
  B.set(B.gxd, "v0", "v0", zero, zero, -a);
  B.set(B.gxd, "w1", "w1", zero, zero, -a - 1);
  B.M.bottom = {1, 0};
  return B.M;
}

std::pair<Rational, Rational> cl_params(const Rational& delta,
                                        const Rational& Lambda) {
  return {-delta - Lambda / 2, Lambda};
}

ConformalModule vir_module_O0() {
  ConformalModule M;
  M.alg = build_Vir();
  auto basis = std::make_shared<GradedBasis>();
  basis->add("m", 0);
  M.basis = basis;
  LambdaValued v(basis);
  v.add_term(1, 0, 0, Rational(1));
  v.add_term(0, 1, 0, Rational(1));
  M.act = {{v}};
  return M;
}

ConformalModule vir_module_O1() {
  ConformalModule M;
  M.alg = build_Vir();
  auto basis = std::make_shared<GradedBasis>();
  basis->add("nn", 0);
  M.basis = basis;
  LambdaValued v(basis);
  v.add_term(0, 1, 0, Rational(1));
  M.act = {{v}};
  return M;
}

ConformalModule cur_lambda_module(AlgebraPtr W, const Rational& c) {
  return tens(character_rep(W->n, c), W);
}

ConformalModule divergence_module(AlgebraPtr W) {
  return cur_lambda_module(W, Rational(-1));
}

bool div_identity_holds(const ConformalModule& curM, const ModuleVector& x,
                        const ModuleVector& y, const Rational& b) {
  const ConformalAlgebra& W = *curM.alg;
  auto to_module = [&](const ModuleVector& cur) {
    ModuleVector out(curM.basis);
    for (auto& [k, c] : cur.terms()) {
      // cur basis "c{I}" -> tensor cell (I, 0)
      const std::string& nm = cur.basis()->name(k[1]);
      XiMask mask = 0;
      for (size_t p = 1; p < nm.size(); ++p)
        mask |= XiMask(1) << (nm[p] - '1');
      out.add_term(k[0], curM.cell_id(mask, 0), c);
    }
    return out;
  };
  auto parity_of = [&](const ModuleVector& v) {
    int p = -1;
    for (auto& [k, c] : v.terms()) {
      int q = W.parity(k[1]);
      if (p < 0)
        p = q;
      else if (p != q)
        throw std::invalid_argument("div identity: non-homogeneous element");
    }
    return p < 0 ? 0 : p;
  };

  LambdaValued br = bracket(W, x, y);
  LambdaValued lhs(curM.basis);
  for (int j = 0; j <= br.lambda_degree(); ++j) {
    ModuleVector cj = br.lambda_coeff(j);
    if (cj.zero()) continue;
    lhs.add_vector(j, to_module(div_deformed(W, cj, b)));
  }

  LambdaValued rhs = mod_act(curM, x, to_module(div_deformed(W, y, b)));
  LambdaValued second = mod_act(curM, y, to_module(div_deformed(W, x, b)));
  int s = ((parity_of(x) & parity_of(y)) & 1) ? -1 : 1;
  rhs += subst_skew(second) * Rational(-s);
  return lhs == rhs;
}

}  // namespace wsck
