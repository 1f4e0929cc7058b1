#include "glrep.hpp"

#include <json.hpp>

#include "superform.hpp"

namespace wsck {

namespace {

int idx_parity(int i) { return i == 0 ? 0 : 1; }

RMatrix zero_mat(int d) { return RMatrix(d, std::vector<Rational>(d)); }

RMatrix mat_add(const RMatrix& a, const RMatrix& b, const Rational& s) {
  RMatrix r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j] * s;
  return r;
}

RMatrix mat_mul(const RMatrix& a, const RMatrix& b) {
  int d = static_cast<int>(a.size());
  RMatrix r = zero_mat(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      if (is_zero(a[i][k])) continue;
      for (int j = 0; j < d; ++j)
        if (!is_zero(b[k][j])) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

bool mat_is_zero(const RMatrix& a) {
  for (auto& row : a)
    for (auto& x : row)
      if (!is_zero(x)) return false;
  return true;
}

// super-commutator [A, B} with operator parities pa, pb
RMatrix super_bracket(const RMatrix& a, const RMatrix& b, int pa, int pb) {
  int s = ((pa & pb) & 1) ? 1 : -1;
  return mat_add(mat_mul(a, b), mat_mul(b, a), Rational(s));
}

}  // namespace

std::vector<int> GlRep::highest_vectors() const {
  std::vector<int> out;
  for (int s = 0; s < dim; ++s) {
    bool highest = true;
    // raising operators: E_0i (i >= 1) and E_ij (1 <= i < j)
    for (int i = 0; i <= n && highest; ++i)
      for (int j = i + 1; j <= n && highest; ++j) {
        const RMatrix& m = mat(i, j);
        for (int u = 0; u < dim; ++u)
          if (!is_zero(m[u][s])) {
            highest = false;
            break;
          }
      }
    if (highest) out.push_back(s);
  }
  return out;
}

CheckReport validate_glrep(const GlRep& V) {
  CheckReport rep;
  int n = V.n, d = V.dim;

  // parity consistency of all stored matrices
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      int pop = (idx_parity(i) + idx_parity(j)) & 1;
      for (int u = 0; u < d; ++u)
        for (int s = 0; s < d; ++s)
          if (!is_zero(V.mat(i, j)[u][s]) &&
              ((V.parity[u] ^ V.parity[s]) != pop))
            rep.failures.push_back("parity E(" + std::to_string(i) + "," +
                                   std::to_string(j) + ") entry " +
                                   std::to_string(u) + "," +
                                   std::to_string(s));
    }

  if (!V.sl) {
    // [E_ij, E_kl} = d_jk E_il - (-1)^{(pi+pj)(pk+pl)} d_li E_kj
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
          for (int l = 0; l <= n; ++l) {
            ++rep.checked;
            int pij = (idx_parity(i) + idx_parity(j)) & 1;
            int pkl = (idx_parity(k) + idx_parity(l)) & 1;
            RMatrix lhs = super_bracket(V.mat(i, j), V.mat(k, l), pij, pkl);
            RMatrix rhs = zero_mat(d);
            if (j == k) rhs = mat_add(rhs, V.mat(i, l), Rational(1));
            if (l == i) {
              int s = ((pij & pkl) & 1) ? 1 : -1;
              rhs = mat_add(rhs, V.mat(k, j), Rational(s));
            }
            if (!mat_is_zero(mat_add(lhs, rhs, Rational(-1))))
              rep.failures.push_back("rel E(" + std::to_string(i) + "," +
                                     std::to_string(j) + "),E(" +
                                     std::to_string(k) + "," +
                                     std::to_string(l) + ")");
          }
    // weight tags: E_00 and E_00 + E_ii diagonal with tagged eigenvalues
    for (int s = 0; s < d; ++s) {
      if (static_cast<int>(V.weight[s].size()) != n + 1) {
        rep.failures.push_back("weight arity v" + std::to_string(s));
        continue;
      }
      for (int u = 0; u < d; ++u) {
        Rational e00 = V.mat(0, 0)[u][s];
        if (u == s) e00 -= V.weight[s][0];
        if (!is_zero(e00))
          rep.failures.push_back("weight(mu) v" + std::to_string(s));
        for (int i = 1; i <= n; ++i) {
          Rational h = V.mat(0, 0)[u][s] + V.mat(i, i)[u][s];
          if (u == s) h -= V.weight[s][i];
          if (!is_zero(h))
            rep.failures.push_back("weight(la_" + std::to_string(i) + ") v" +
                                   std::to_string(s));
        }
      }
    }
  } else {
    // sl(1|n) basis: E_ij (i != j) and h_i = E_00 + E_ii, stored with
    // E_00 = 0. Abstract brackets are computed in gl coordinates and
    // decomposed; decomposability requires supertrace zero.
    struct Elem {
      std::map<std::pair<int, int>, Rational> gl;  // abstract gl coords
      RMatrix m;
      int parity;
      std::string name;
    };
    std::vector<Elem> basis;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        if (i != j)
          basis.push_back({{{{i, j}, Rational(1)}},
                           V.mat(i, j),
                           (idx_parity(i) + idx_parity(j)) & 1,
                           "E" + std::to_string(i) + std::to_string(j)});
    for (int i = 1; i <= n; ++i)
      basis.push_back(
          {{{{0, 0}, Rational(1)}, {{i, i}, Rational(1)}},
           mat_add(V.mat(0, 0), V.mat(i, i), Rational(1)),
           0,
           "h" + std::to_string(i)});

    auto abstract_bracket = [&](const Elem& x, const Elem& y) {
      std::map<std::pair<int, int>, Rational> out;
      for (auto& [ij, a] : x.gl)
        for (auto& [kl, b] : y.gl) {
          auto [i, j] = ij;
          auto [k, l] = kl;
          int pij = (idx_parity(i) + idx_parity(j)) & 1;
          int pkl = (idx_parity(k) + idx_parity(l)) & 1;
          int s = ((pij & pkl) & 1) ? -1 : 1;
          if (j == k) out[{i, l}] += a * b;
          if (l == i) out[{k, j}] -= a * b * s;
        }
      return out;
    };

    for (auto& x : basis)
      for (auto& y : basis) {
        ++rep.checked;
        auto ab = abstract_bracket(x, y);
        // decompose: off-diagonal entries directly, diagonal via h_i
        RMatrix expect = zero_mat(d);
        Rational str(0);
        Rational c00(0);
        for (auto& [ij, c] : ab) {
          auto [i, j] = ij;
          if (i != j) {
            expect = mat_add(expect, V.mat(i, j), c);
          } else if (i == 0) {
            str += c;
            c00 = c;
          } else {
            str -= c;
            expect = mat_add(
                expect, mat_add(V.mat(0, 0), V.mat(i, i), Rational(1)), c);
          }
        }
        if (!is_zero(str)) {
          rep.failures.push_back("str([" + x.name + "," + y.name + "]) != 0");
          continue;
        }
        // diagonal part c00 E_00 + sum c_i E_ii with c00 = sum c_i equals
        // sum c_i h_i minus (sum c_i - c00) E_00 = sum c_i h_i exactly.
        RMatrix got = super_bracket(x.m, y.m, x.parity, y.parity);
        if (!mat_is_zero(mat_add(got, expect, Rational(-1))))
          rep.failures.push_back("rel [" + x.name + "," + y.name + "]");
      }
    for (int s = 0; s < d; ++s) {
      if (static_cast<int>(V.weight[s].size()) != n) {
        rep.failures.push_back("weight arity v" + std::to_string(s));
        continue;
      }
      for (int i = 1; i <= n; ++i)
        for (int u = 0; u < d; ++u) {
          Rational h = V.mat(0, 0)[u][s] + V.mat(i, i)[u][s];
          if (u == s) h -= V.weight[s][i - 1];
          if (!is_zero(h))
            rep.failures.push_back("weight(h_" + std::to_string(i) + ") v" +
                                   std::to_string(s));
        }
    }
  }
  return rep;
}

GlRep build_standard(int n) {
  GlRep V;
  V.init(n, n + 1);
  V.label = "standard";
  for (int s = 0; s <= n; ++s) {
    V.parity[s] = idx_parity(s);
    V.names[s] = "e" + std::to_string(s);
    std::vector<Rational> w(n + 1, Rational(0));
    w[0] = Rational(s == 0 ? 1 : 0);  // mu = E_00 eigenvalue
    for (int i = 1; i <= n; ++i) w[i] = w[0] + Rational(s == i ? 1 : 0);
    V.weight[s] = w;
  }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) V.mat(i, j)[i][j] = Rational(1);
  return V;
}

GlRep build_forms_const(int k, int n) {
  if (k < 0) throw std::invalid_argument("forms_const: k >= 0");
  // basis (dt)^a prod dxi_i^{b_i} with a + sum b_i = k
  std::vector<FormKey> keys;
  std::function<void(int, int, FormKey)> gen = [&](int i, int left, FormKey kk) {
    if (i > n) {
      if (left == 0) keys.push_back(kk);
      else if (left == 1) {
        kk.dt = 1;
        keys.push_back(kk);
      }
      return;
    }
    for (int b = 0; b <= left; ++b) {
      FormKey kk2 = kk;
      kk2.dxi[i - 1] = static_cast<uint8_t>(b);
      gen(i + 1, left - b, kk2);
    }
  };
  gen(1, k, FormKey{});
  std::sort(keys.begin(), keys.end());

  GlRep V;
  V.init(n, static_cast<int>(keys.size()));
  V.label = "forms_const(" + std::to_string(k) + ")";
  std::map<FormKey, int> index;
  for (int s = 0; s < V.dim; ++s) {
    index[keys[s]] = s;
    V.parity[s] = keys[s].parity();
    std::string nm = "w" + std::to_string(s);
    V.names[s] = nm;
  }
  // E_ij acts as the Lie derivative of xi_i d_j with xi_0 = t, d_0 = d_t.
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      SForm a0(n);
      std::vector<SForm> ai(n, SForm(n));
      FormKey ki{};
      if (i == 0)
        ki.tpow = 1;
      else
        ki.xi = XiMask(1) << (i - 1);
      SForm coeff = SForm::monomial(n, ki);
      if (j == 0)
        a0 = coeff;
      else
        ai[j - 1] = coeff;
      FormDerivation D = field_form_derivation(n, a0, ai);
      for (int s = 0; s < V.dim; ++s) {
        SForm img = apply_derivation(D, SForm::monomial(n, keys[s]));
        for (auto& [kk, c] : img.terms()) {
          auto it = index.find(kk);
          if (it == index.end())
            throw std::logic_error("forms_const: action left the space");
          V.mat(i, j)[it->second][s] = c;
        }
      }
    }
  for (int s = 0; s < V.dim; ++s) {
    std::vector<Rational> w(n + 1);
    w[0] = V.mat(0, 0)[s][s];
    for (int i = 1; i <= n; ++i) w[i] = w[0] + V.mat(i, i)[s][s];
    V.weight[s] = w;
  }
  return V;
}

GlRep build_dual_rep(const GlRep& V) {
  if (V.sl) throw std::invalid_argument("dual of sl-flagged rep unsupported");
  GlRep D;
  D.init(V.n, V.dim);
  D.label = V.label + "^*";
  for (int s = 0; s < V.dim; ++s) {
    D.parity[s] = V.parity[s];
    D.names[s] = V.names[s] + "'";
    std::vector<Rational> w = V.weight[s];
    for (auto& x : w) x = -x;
    D.weight[s] = w;
  }
  // (E phi_r)(v_s) = -(-1)^{p(E) p(phi_r)} phi_r(E v_s)
  for (int i = 0; i <= V.n; ++i)
    for (int j = 0; j <= V.n; ++j) {
      int pe = (idx_parity(i) + idx_parity(j)) & 1;
      for (int r = 0; r < V.dim; ++r)
        for (int s = 0; s < V.dim; ++s) {
          int sgn = ((pe & V.parity[r]) & 1) ? 1 : -1;
          D.mat(i, j)[s][r] = V.mat(i, j)[r][s] * sgn;
        }
    }
  return D;
}

GlRep character_rep(int n, const Rational& c) {
  GlRep V;
  V.init(n, 1);
  V.label = "char(" + rat_str(c) + ")";
  V.mat(0, 0)[0][0] = c;
  for (int i = 1; i <= n; ++i) V.mat(i, i)[0][0] = -c;
  std::vector<Rational> w(n + 1, Rational(0));
  w[0] = c;
  V.weight[0] = w;
  return V;
}

GlRep build_bar_forms(int k, int n) {
  // forms_const(k) twisted by the character of <t^{-1} xi_*>: chi = -str,
  // and a parity shift by n mod 2 from the xi_* factor.
  GlRep V = build_forms_const(k, n);
  V.label = "bar_forms(" + std::to_string(k) + ")";
  for (int s = 0; s < V.dim; ++s) {
    V.mat(0, 0)[s][s] += Rational(-1);
    for (int i = 1; i <= n; ++i) V.mat(i, i)[s][s] += Rational(1);
    V.parity[s] = (V.parity[s] + n) & 1;
    V.weight[s][0] += Rational(-1);  // la_i = mu + E_ii shift is 0
    V.names[s] = "b" + std::to_string(s);
  }
  return V;
}

GlRep sl_restrict(const GlRep& V) {
  if (V.sl) return V;
  GlRep R = V;
  R.sl = true;
  R.label = "sl(" + V.label + ")";
  for (int i = 1; i <= V.n; ++i)
    R.mat(i, i) = mat_add(V.mat(0, 0), V.mat(i, i), Rational(1));
  R.mat(0, 0) = zero_mat(V.dim);
  for (int s = 0; s < V.dim; ++s) {
    std::vector<Rational> w(V.n);
    for (int i = 1; i <= V.n; ++i) w[i - 1] = V.weight[s][i];
    R.weight[s] = w;
  }
  return R;
}

std::string glrep_to_json(const GlRep& V) {
  nlohmann::json j;
  j["n"] = V.n;
  j["dim"] = V.dim;
  j["sl"] = V.sl;
  j["label"] = V.label;
  j["parities"] = V.parity;
  {
    std::vector<std::vector<std::string>> w;
    for (auto& row : V.weight) {
      std::vector<std::string> r;
      for (auto& x : row) r.push_back(rat_str(x));
      w.push_back(r);
    }
    j["weights"] = w;
  }
  nlohmann::json em = nlohmann::json::object();
  for (int i = 0; i <= V.n; ++i)
    for (int jj = 0; jj <= V.n; ++jj) {
      bool nz = false;
      for (auto& row : V.mat(i, jj))
        for (auto& x : row)
          if (!is_zero(x)) nz = true;
      if (!nz) continue;
      std::vector<std::vector<std::string>> m;
      for (auto& row : V.mat(i, jj)) {
        std::vector<std::string> r;
        for (auto& x : row) r.push_back(rat_str(x));
        m.push_back(r);
      }
      em[std::to_string(i) + "," + std::to_string(jj)] = m;
    }
  j["E"] = em;
  return j.dump(2);
}

GlRep glrep_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GlRep V;
  int n = j.at("n").get<int>();
  int dim = j.at("dim").get<int>();
  if (n < 0 || n > 8 || dim <= 0 || dim > 4096)
    throw std::invalid_argument("rep json: bad n or dim");
  V.init(n, dim);
  V.sl = j.value("sl", false);
  V.label = j.value("label", std::string("user"));
  auto par = j.at("parities");
  if (static_cast<int>(par.size()) != dim)
    throw std::invalid_argument("rep json: parities arity");
  for (int s = 0; s < dim; ++s) V.parity[s] = par[s].get<int>() & 1;
  auto ws = j.at("weights");
  if (static_cast<int>(ws.size()) != dim)
    throw std::invalid_argument("rep json: weights arity");
  int warity = V.sl ? n : n + 1;
  for (int s = 0; s < dim; ++s) {
    if (static_cast<int>(ws[s].size()) != warity)
      throw std::invalid_argument("rep json: weight tuple arity");
    std::vector<Rational> w;
    for (auto& x : ws[s]) w.push_back(rat_parse(x.get<std::string>()));
    V.weight[s] = w;
  }
  for (auto& [key, m] : j.at("E").items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("rep json: bad E key " + key);
    int i = std::stoi(key.substr(0, comma));
    int jj = std::stoi(key.substr(comma + 1));
    if (i < 0 || i > n || jj < 0 || jj > n)
      throw std::invalid_argument("rep json: E index out of range");
    if (static_cast<int>(m.size()) != dim)
      throw std::invalid_argument("rep json: E matrix shape");
    for (int u = 0; u < dim; ++u) {
      if (static_cast<int>(m[u].size()) != dim)
        throw std::invalid_argument("rep json: E matrix shape");
      for (int s = 0; s < dim; ++s)
        V.mat(i, jj)[u][s] = rat_parse(m[u][s].get<std::string>());
    }
  }
  return V;
}

}  // namespace wsck
