#ifndef WSCK_GLREP_HPP
#define WSCK_GLREP_HPP

#include <string>
#include <vector>

#include "conformal.hpp"

namespace wsck {

using RMatrix = std::vector<std::vector<Rational>>;  // [row][col]

/// Finite-dimensional gl(1|n) representation in a weight basis.
/// Column convention: E_ij v_s = sum_u mat(i,j)[u][s] v_u, indices 0..n with
/// p_0 = 0 and p_i = 1 for i >= 1. For sl-flagged reps only E_ij (i != j)
/// and h_i = E_00 + E_ii are meaningful; they are stored normalized as
/// E_00 = 0, E_ii = h_i, and weights carry n entries (h_1..h_n) instead of
/// the gl tuple (mu; la_1..la_n) of eigenvalues of E_00, E_00 + E_ii.
struct GlRep {
  int n = 0;
  int dim = 0;
  bool sl = false;
  std::string label;
  std::vector<std::string> names;
  std::vector<int> parity;
  std::vector<std::vector<Rational>> weight;
  std::vector<RMatrix> E;  // index i * (n+1) + j

  const RMatrix& mat(int i, int j) const { return E[i * (n + 1) + j]; }
  RMatrix& mat(int i, int j) { return E[i * (n + 1) + j]; }

  void init(int n_, int dim_) {
    n = n_;
    dim = dim_;
    E.assign((n + 1) * (n + 1), RMatrix(dim, std::vector<Rational>(dim)));
    parity.assign(dim, 0);
    weight.assign(dim, {});
    names.resize(dim);
    for (int s = 0; s < dim; ++s) names[s] = "v" + std::to_string(s);
  }

  // index of the highest vector: weight tag maximal in lexicographic order
  // restricted to vectors annihilated by the raising operators
  std::vector<int> highest_vectors() const;
};

CheckReport validate_glrep(const GlRep& V);

GlRep build_standard(int n);
GlRep build_forms_const(int k, int n);
GlRep build_dual_rep(const GlRep& V);
GlRep build_bar_forms(int k, int n);
GlRep character_rep(int n, const Rational& c);  // 1-dim, chi = c * str
GlRep sl_restrict(const GlRep& V);

std::string glrep_to_json(const GlRep& V);
GlRep glrep_from_json(const std::string& text);

}  // namespace wsck

#endif
