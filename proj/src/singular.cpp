#include "singular.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wsck {

namespace {

// --- sparse exact row reduction ----------------------------------------------

struct Rref {
  std::map<int, int> pivots;  // col -> row index
  std::vector<std::map<int, Rational>> rows;

  void add_row(std::map<int, Rational> r) {
    while (!r.empty()) {
      int c = r.begin()->first;
      auto it = pivots.find(c);
      if (it == pivots.end()) {
        Rational lead = r.begin()->second;
        for (auto& [col, v] : r) v /= lead;
        for (auto& row : rows) {
          auto e = row.find(c);
          if (e == row.end()) continue;
          Rational f = e->second;
          for (auto& [col, v] : r) {
            auto re = row.find(col);
            if (re == row.end()) {
              row[col] = -f * v;
            } else {
              re->second -= f * v;
              if (is_zero(re->second)) row.erase(re);
            }
          }
        }
        pivots[c] = static_cast<int>(rows.size());
        rows.push_back(std::move(r));
        return;
      }
      const auto& prow = rows[it->second];
      Rational f = r.begin()->second;
      for (auto& [col, v] : prow) {
        auto re = r.find(col);
        if (re == r.end()) {
          r[col] = -f * v;
        } else {
          re->second -= f * v;
          if (is_zero(re->second)) r.erase(re);
        }
      }
    }
  }

  std::vector<std::map<int, Rational>> kernel(int ncols) const {
    std::vector<std::map<int, Rational>> out;
    for (int f = 0; f < ncols; ++f) {
      if (pivots.count(f)) continue;
      std::map<int, Rational> x;
      x[f] = Rational(1);
      for (auto& [c, ridx] : pivots) {
        auto e = rows[ridx].find(f);
        if (e != rows[ridx].end()) x[c] = -e->second;
      }
      out.push_back(std::move(x));
    }
    return out;
  }
};

std::vector<std::vector<Rational>> dense_kernel(
    const std::vector<std::vector<Rational>>& rows, int ncols) {
  Rref rr;
  for (auto& row : rows) {
    std::map<int, Rational> r;
    for (int j = 0; j < ncols; ++j)
      if (!is_zero(row[j])) r[j] = row[j];
    rr.add_row(std::move(r));
  }
  auto ker = rr.kernel(ncols);
  std::vector<std::vector<Rational>> out;
  for (auto& k : ker) {
    std::vector<Rational> v(ncols, Rational(0));
    for (auto& [c, val] : k) v[c] = val;
    out.push_back(std::move(v));
  }
  return out;
}

// --- constraint elements -------------------------------------------------------

// Annihilation-side rows for the S-families: a basis of every graded piece
// L_d (d >= 1) of {div = 0} in W(1,n)_+, plus the Borel part of L_0.
std::vector<AnnElement> s_constraint_elements(const AlgebraPtr& W, int dmax,
                                              bool drop_special) {
  int n = W->n;
  XiMask full = (XiMask(1) << n) - 1;
  std::vector<AnnElement> out;

  int dbound = dmax + n + 2;
  for (int d = 1; d <= dbound; ++d) {
    struct Mono {
      int i;
      int j;
      XiMask I;
    };
    std::vector<Mono> monos;
    for (XiMask I = 0; I <= full; ++I) {
      int j = d + 1 - mask_size(I);
      if (j < 0) continue;
      for (int i = 0; i <= n; ++i) monos.push_back({i, j, I});
    }
    std::map<std::pair<int, XiMask>, int> tindex;
    auto tid = [&](int j, XiMask I) {
      auto key = std::make_pair(j, I);
      auto it = tindex.find(key);
      if (it != tindex.end()) return it->second;
      int id = static_cast<int>(tindex.size());
      tindex[key] = id;
      return id;
    };
    std::vector<std::map<int, Rational>> cols(monos.size());
    for (size_t c = 0; c < monos.size(); ++c) {
      auto [i, j, I] = monos[c];
      if (i == 0) {
        if (j > 0) cols[c][tid(j - 1, I)] += Rational(j);
      } else {
        Grassmann dI = gderiv(i, Grassmann::monomial(n, I));
        int sgn = (mask_size(I) & 1) ? -1 : 1;
        for (auto& [K, v] : dI.terms()) cols[c][tid(j, K)] += v * sgn;
      }
    }
    std::vector<std::vector<Rational>> rows(
        tindex.size(), std::vector<Rational>(monos.size(), Rational(0)));
    for (size_t c = 0; c < monos.size(); ++c)
      for (auto& [r, v] : cols[c]) rows[r][c] = v;
    auto ker = dense_kernel(rows, static_cast<int>(monos.size()));

    int special = -1;
    if (d == n - 1)
      for (size_t c = 0; c < monos.size(); ++c)
        if (monos[c].i == 0 && monos[c].j == 0 && monos[c].I == full)
          special = static_cast<int>(c);

    if (special >= 0) {
      // isolate the special direction xi_* d_0 (itself divergence-free):
      // remove its coordinate from every basis vector, then append it as a
      // separate row unless the derived subalgebra drops it
      for (auto& v : ker)
        if (!is_zero(v[special])) v[special] = Rational(0);
      if (!drop_special) {
        std::vector<Rational> pure(monos.size(), Rational(0));
        pure[special] = Rational(1);
        ker.push_back(pure);
      }
    }

    for (auto& v : ker) {
      AnnElement e(W);
      bool nonzero = false;
      for (size_t c = 0; c < monos.size(); ++c) {
        if (is_zero(v[c])) continue;
        nonzero = true;
        auto [i, j, I] = monos[c];
        int gen = (i == 0) ? W->f_id(I) : W->w_id(I, i);
        e.add_term(gen, j, v[c]);
      }
      if (nonzero) out.push_back(std::move(e));
    }
  }

  for (int i = 1; i <= n; ++i)
    out.push_back(AnnElement::unit(W, W->w_id(0, i), 1));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.push_back(AnnElement::unit(W, W->w_id(XiMask(1) << (i - 1), j), 0));
  return out;
}

std::vector<std::array<int, 2>> unknown_order(const ConformalModule& M,
                                              int dmax) {
  // non-bottom cells first so canonical representatives isolate the
  // trivial solutions
  std::vector<std::array<int, 2>> out;
  for (int k = 0; k <= dmax; ++k)
    for (int id = 0; id < M.basis->size(); ++id) {
      bool bottom = !M.bottom.empty() && M.bottom[id] && k == 0;
      if (!bottom) out.push_back({k, id});
    }
  for (int id = 0; id < M.basis->size(); ++id)
    if (!M.bottom.empty() && M.bottom[id]) out.push_back({0, id});
  return out;
}

std::vector<Rational> unknown_weight(const ConformalModule& M,
                                     const std::array<int, 2>& u) {
  auto& tag = M.basis->at(u[1]).weight;
  if (!tag) throw std::invalid_argument("module basis lacks weight tags");
  std::vector<Rational> w = *tag;
  for (auto& x : w) x -= Rational(u[0]);
  return w;
}

XiMask cell_mask(const ConformalModule& M, int id) {
  const std::string& nm = M.basis->name(id);
  XiMask mask = 0;
  for (size_t p = 1; p < nm.size() && nm[p] != '*'; ++p)
    mask |= XiMask(1) << (nm[p] - '1');
  return mask;
}

}  // namespace

LinearSystem assemble(const Ansatz& ansatz, GenSet gens) {
  const ConformalModule& M = *ansatz.module;
  const AlgebraPtr& W = M.alg;
  int dmax = ansatz.dmax;
  LinearSystem sys;
  sys.unknowns = unknown_order(M, dmax);
  sys.ncols = static_cast<int>(sys.unknowns.size());

  std::map<std::array<int, 3>, std::map<int, Rational>> rowmap;

  if (gens == GenSet::W) {
    int cond = 0;
    for (int g = 0; g < W->rank(); ++g) {
      const GenInfo& gi = W->info[g];
      // Which lambda-coefficients of this generator's action must vanish on
      // a highest singular vector: everything of positive annihilation
      // degree, plus the raising part of the degree-0 piece.
      auto active = [&](int j) {
        if (gi.field) {
          if (j >= 2) return true;                // t-powers >= 2
          if (j == 1) return gi.mask != 0;        // t-linear except the Cartan
          return mask_size(gi.mask) > 1;          // quadratic coefficients
        }
        if (j >= 1) return true;                  // all positive t-powers
        if (mask_size(gi.mask) > 1) return true;  // quadratic coefficients
        if (mask_size(gi.mask) == 1) {            // raising part of gl(1|n)
          int i = 1;
          while (!((gi.mask >> (i - 1)) & 1)) ++i;
          return i < gi.i;
        }
        return false;
      };
      for (int c = 0; c < sys.ncols; ++c) {
        auto [k, id] = sys.unknowns[c];
        LambdaValued val =
            mod_act(M, ModuleVector::unit(W->gens, g), M.dressed_unit(id, k));
        for (auto& [key, v] : val.terms()) {
          if (!active(key[0])) continue;
          rowmap[{cond + key[0], key[1], key[2]}][c] += v;
        }
      }
      cond += dmax + 4;
      sys.condition_count += dmax + 3;
    }
  } else {
    auto elems = s_constraint_elements(W, dmax, gens == GenSet::Sprime);
    sys.condition_count = static_cast<long>(elems.size());
    for (size_t e = 0; e < elems.size(); ++e)
      for (int c = 0; c < sys.ncols; ++c) {
        auto [k, id] = sys.unknowns[c];
        ModuleVector img = ann_act(M, elems[e], M.dressed_unit(id, k));
        for (auto& [key, v] : img.terms())
          rowmap[{static_cast<int>(e), key[0], key[1]}][c] += v;
      }
  }

  for (auto& [key, row] : rowmap)
    if (!row.empty()) sys.rows.push_back(std::move(row));
  return sys;
}

namespace {

std::string support_tag(const ConformalModule& M, const ModuleVector& v,
                        bool s_case) {
  if (!M.rep || M.alg->n < 2) return "";
  int n = M.alg->n;
  XiMask full = (XiMask(1) << n) - 1;
  std::map<int, std::set<XiMask>> cells;
  int ddeg = 0;
  for (auto& [k, c] : v.terms()) {
    cells[k[0]].insert(cell_mask(M, k[1]));
    ddeg = std::max(ddeg, k[0]);
  }
  std::string prefix = s_case ? "S-" : "W-";
  auto only_comasks = [&](const std::set<XiMask>& s, int size_wanted) {
    for (XiMask m : s)
      if (mask_size(m) != size_wanted) return false;
    return true;
  };
  if (ddeg == 0) {
    const auto& s0 = cells[0];
    if (only_comasks(s0, n - 1)) {
      if (s0.size() == 1) return prefix + "a";
      return prefix + "b";
    }
    return "unmatched";
  }
  if (ddeg == 1) {
    const auto& s1 = cells[1];
    if (s1.size() == 1 && *s1.begin() == full) {
      for (XiMask m : cells[0])
        if (mask_size(m) < n - 1) return "unmatched";
      return prefix + "c";
    }
    if (s_case && s1.size() == 1 && mask_size(*s1.begin()) == n - 1) {
      for (XiMask m : cells[0])
        if (mask_size(m) != n - 2 && mask_size(m) != n - 1) return "unmatched";
      return prefix + "d";
    }
  }
  return "unmatched";
}

std::vector<Rational> defining_weight_of(const ConformalModule& M,
                                         const ModuleVector& v,
                                         const std::string& tag) {
  if (tag.empty() || tag == "unmatched" || !M.rep) return {};
  const GlRep& V = *M.rep;
  int n = M.alg->n;
  XiMask full = (XiMask(1) << n) - 1;
  char kind = tag.back();
  int want_k = (kind == 'c' || kind == 'd') ? 1 : 0;
  std::map<XiMask, std::vector<Rational>> found;
  for (auto& [k, c] : v.terms()) {
    if (k[0] != want_k) continue;
    XiMask mask = cell_mask(M, k[1]);
    if (kind == 'c' && mask != full) continue;
    for (int s = 0; s < V.dim; ++s) {
      auto it = M.cell.find({mask, s});
      if (it != M.cell.end() && it->second == k[1]) {
        found[mask] = V.weight[s];
        break;
      }
    }
  }
  if (found.empty()) return {};
  if (kind == 'b') {
    XiMask want = full & ~XiMask(1);
    auto it = found.find(want);
    return it == found.end() ? found.begin()->second : it->second;
  }
  return found.begin()->second;
}

}  // namespace

SingularReport solve(const Ansatz& ansatz, GenSet gens) {
  const ConformalModule& M = *ansatz.module;
  LinearSystem sys = assemble(ansatz, gens);
  SingularReport rep;
  rep.constraints = static_cast<long>(sys.rows.size());

  Rref rr;
  for (auto& row : sys.rows) rr.add_row(std::map<int, Rational>(row));
  rep.rank = static_cast<int>(rr.rows.size());
  auto ker = rr.kernel(sys.ncols);
  rep.solution_dim = static_cast<int>(ker.size());

  // The solution space is Cartan-invariant, so projecting a solution onto a
  // weight component yields another solution; the components assemble the
  // full space back (dimension check below).
  std::map<std::vector<Rational>, std::vector<std::map<int, Rational>>> bucket;
  for (auto& x : ker) {
    std::map<std::vector<Rational>, std::map<int, Rational>> parts;
    for (auto& [c, v] : x)
      parts[unknown_weight(M, sys.unknowns[c])][c] = v;
    for (auto& [w, part] : parts) bucket[w].push_back(std::move(part));
  }

  int total = 0;
  for (auto& [w, vecs] : bucket) {
    Rref sub;
    for (auto& v : vecs) sub.add_row(std::map<int, Rational>(v));
    std::vector<std::pair<int, const std::map<int, Rational>*>> ordered;
    for (auto& [c, r] : sub.pivots) ordered.push_back({c, &sub.rows[r]});
    std::sort(ordered.begin(), ordered.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [pc, prow] : ordered) {
      ++total;
      SingularVector sv;
      sv.weight = w;
      ModuleVector mv(M.basis);
      bool trivial = true;
      int ddeg = 0;
      for (auto& [c, v] : *prow) {
        auto [k, id] = sys.unknowns[c];
        mv += M.dressed_unit(id, k) * v;  // honest module coordinates
        ddeg = std::max(ddeg, k);
        bool bottom = !M.bottom.empty() && M.bottom[id] && k == 0;
        if (!bottom) trivial = false;
      }
      sv.vector = std::move(mv);
      sv.ddegree = ddeg;
      sv.trivial = trivial;
      if (!trivial) {
        sv.tag = support_tag(M, sv.vector, gens != GenSet::W);
        sv.defining_weight = defining_weight_of(M, sv.vector, sv.tag);
      }
      rep.vectors.push_back(std::move(sv));
    }
  }
  if (total != rep.solution_dim)
    throw std::logic_error("weight split lost solutions");
  return rep;
}

bool recheck_raw_conditions(const ConformalModule& M, const ModuleVector& m,
                            GenSet gens, int tmax) {
  const AlgebraPtr& W = M.alg;
  std::vector<AnnElement> elems;
  if (gens == GenSet::W) {
    for (int g = 0; g < W->rank(); ++g) {
      const GenInfo& gi = W->info[g];
      for (int j = 0; j <= tmax; ++j) {
        int deg = j + mask_size(gi.mask) - 1;
        bool include = false;
        if (deg >= 1)
          include = true;
        else if (deg == 0) {
          if (!gi.field && gi.mask == 0 && j == 1) include = true;  // t d_i
          if (!gi.field && j == 0 && mask_size(gi.mask) == 1) {
            int i = 1;
            while (!((gi.mask >> (i - 1)) & 1)) ++i;
            if (i < gi.i) include = true;  // xi_i d_j, i < j
          }
        }
        if (include) elems.push_back(AnnElement::unit(W, g, j));
      }
    }
  } else {
    elems = s_constraint_elements(W, tmax, gens == GenSet::Sprime);
  }
  for (auto& e : elems)
    if (!ann_act(M, e, m).zero()) return false;
  return true;
}

bool verify_degree_lemma(const ConformalModule& M, GenSet gens) {
  Ansatz a{std::make_shared<ConformalModule>(M), 3};
  SingularReport rep = solve(a, gens);
  int n = M.alg->n;
  XiMask full = (XiMask(1) << n) - 1;
  for (auto& sv : rep.vectors) {
    if (sv.trivial) continue;
    if (sv.ddegree > 1) return false;
    if (gens == GenSet::W && M.rep) {
      for (auto& [k, c] : sv.vector.terms()) {
        XiMask mask = cell_mask(M, k[1]);
        if (k[0] == 1 && mask != full) return false;
        if (k[0] == 0 && mask_size(mask) < n - 1) return false;
      }
    }
  }
  return true;
}

InventoryEntry classify_family(const std::string& family, int n, int k,
                               GenSet gens, int dmax, const Rational& alpha) {
  GlRep V;
  if (family == "theta")
    V = build_dual_rep(build_forms_const(k, n));
  else if (family == "barforms")
    V = build_bar_forms(k, n);
  else if (family == "standard")
    V = build_standard(n);
  else
    throw std::invalid_argument("unknown family: " + family);
  if (gens != GenSet::W) V = sl_restrict(V);
  AlgebraPtr W = build_W(n);
  ConformalModule M = tens(V, W);
  if (!is_zero(alpha)) M = twist(M, alpha);
  Ansatz a{std::make_shared<ConformalModule>(M), dmax};
  SingularReport rep = solve(a, gens);

  InventoryEntry e;
  e.family = family;
  e.n = n;
  e.k = k;
  for (auto& sv : rep.vectors) {
    if (sv.trivial) continue;
    ++e.count;
    e.weights.push_back(sv.weight);
    e.tags.push_back(sv.tag);
    e.defining_weights.push_back(sv.defining_weight);
  }
  return e;
}

std::vector<InventoryEntry> expected_inventory(GenSet gens, int n) {
  std::vector<InventoryEntry> out;
  auto wvec = [&](long mu, std::vector<long> la) {
    std::vector<Rational> w;
    if (gens == GenSet::W) w.push_back(Rational(mu));
    for (long x : la) w.push_back(Rational(x));
    return w;
  };
  std::string p = (gens == GenSet::W) ? "W-" : "S-";
  for (int k = 0; k <= 3; ++k) {
    InventoryEntry e;
    e.family = "theta";
    e.n = n;
    e.k = k;
    e.count = 1;
    std::vector<long> la(n, 0), dla(n, 0);
    la[n - 1] = -k - 1;
    dla[n - 1] = -k;
    e.weights.push_back(wvec(0, la));
    e.tags.push_back(p + "a");
    e.defining_weights.push_back(wvec(0, dla));
    out.push_back(e);
  }
  {
    // For W the k = 0 member is irreducible; its sl restriction is the
    // trivial rep, i.e. the k = 0 member of the theta family, hence
    // degenerate for the S-families.
    InventoryEntry e;
    e.family = "barforms";
    e.n = n;
    e.k = 0;
    if (gens == GenSet::W) {
      e.count = 0;
    } else {
      e.count = 1;
      std::vector<long> la(n, 0), dla(n, 0);
      la[n - 1] = -1;
      e.weights.push_back(wvec(0, la));
      e.tags.push_back("S-a");
      e.defining_weights.push_back(wvec(0, dla));
    }
    out.push_back(e);
  }
  {
    InventoryEntry e;
    e.family = "barforms";
    e.n = n;
    e.k = 1;
    std::vector<long> zeros(n, 0), ones(n, 1);
    if (gens == GenSet::W) {
      e.count = 1;
      e.weights.push_back(wvec(-1, zeros));
      e.tags.push_back("W-c");
      e.defining_weights.push_back(wvec(0, ones));
    } else {
      std::vector<long> dm1(n, 0);
      dm1[n - 1] = -1;
      e.count = (gens == GenSet::Sprime && n == 2) ? 3 : 2;
      e.weights.push_back(wvec(0, zeros));
      e.tags.push_back("S-c");
      e.defining_weights.push_back(wvec(0, ones));
      e.weights.push_back(wvec(0, dm1));
      e.tags.push_back("S-d");
      e.defining_weights.push_back(wvec(0, ones));
      if (e.count == 3) {
        e.weights.push_back(wvec(0, zeros));
        e.tags.push_back("unmatched");
        e.defining_weights.push_back({});
      }
    }
    out.push_back(e);
  }
  for (int k = 2; k <= 3; ++k) {
    InventoryEntry e;
    e.family = "barforms";
    e.n = n;
    e.k = k;
    e.count = 1;
    std::vector<long> la(n, 1), dla(n, 1);
    la[0] = k - 1;
    dla[0] = k;
    e.weights.push_back(wvec(0, la));
    e.tags.push_back(p + "b");
    e.defining_weights.push_back(wvec(0, dla));
    out.push_back(e);
  }
  if (gens == GenSet::W) {
    InventoryEntry e;
    e.family = "standard";
    e.n = n;
    e.k = 0;
    e.count = 0;
    out.push_back(e);
  }
  return out;
}

bool inventory_matches(const InventoryEntry& got, const InventoryEntry& want,
                       std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (got.count != want.count)
    return fail("count " + std::to_string(got.count) +
                " != " + std::to_string(want.count));
  auto key = [](const InventoryEntry& e) {
    std::vector<std::pair<std::vector<Rational>, std::string>> k;
    for (size_t i = 0; i < e.weights.size(); ++i)
      k.push_back({e.weights[i], e.tags[i]});
    std::sort(k.begin(), k.end());
    return k;
  };
  if (key(got) != key(want)) return fail("weights/tags differ");
  return true;
}

}  // namespace wsck
