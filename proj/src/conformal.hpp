#ifndef WSCK_CONFORMAL_HPP
#define WSCK_CONFORMAL_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "grassmann.hpp"
#include "modulevec.hpp"
#include "polymat.hpp"

namespace wsck {

// Generator of W_n: either the vector-field part xi_I d_i (field = false)
// or the coefficient part xi_I, standing for the field xi_I d_t (field = true).
struct GenInfo {
  bool field = false;
  XiMask mask = 0;
  int i = 0;  // derivation index for the W(n)-part, unused otherwise
};

/// Finite Lie conformal superalgebra given by a lambda-bracket table on a
/// free generator basis; all other brackets follow by sesquilinearity.
class ConformalAlgebra {
 public:
  std::string kind;  // "W" or "Vir"
  int n = 0;
  BasisPtr gens;
  std::vector<GenInfo> info;
  std::vector<std::vector<LambdaValued>> table;

  int rank() const { return gens->size(); }
  int parity(int id) const { return gens->parity(id); }

  int w_id(XiMask mask, int i) const { return wid_.at({mask, i}); }
  int f_id(XiMask mask) const { return fid_.at(mask); }
  bool has_w(XiMask mask, int i) const { return wid_.count({mask, i}) != 0; }

  std::map<std::pair<XiMask, int>, int> wid_;
  std::map<XiMask, int> fid_;
};

using AlgebraPtr = std::shared_ptr<const ConformalAlgebra>;

AlgebraPtr build_W(int n);
AlgebraPtr build_Vir();

/// Full bracket by sesquilinear extension:
/// [(d^k a)_la (d^l b)] = (-la)^k (la+d)^l [a_la b].
LambdaValued bracket(const ConformalAlgebra& A, const ModuleVector& x,
                     const ModuleVector& y);

struct CheckReport {
  std::vector<std::string> failures;
  long checked = 0;
  bool pass() const { return failures.empty(); }
};

CheckReport check_skew(const ConformalAlgebra& A);
CheckReport check_jacobi(const ConformalAlgebra& A);

// Skew / Jacobi for arbitrary elements (used on subalgebra bases).
bool skew_holds(const ConformalAlgebra& A, const ModuleVector& x,
                const ModuleVector& y);
bool jacobi_holds(const ConformalAlgebra& A, const ModuleVector& x,
                  const ModuleVector& y, const ModuleVector& z);

// --- divergence -----------------------------------------------------------

/// Basis of Cur Lambda(n): one even/odd generator per monomial xi_I.
BasisPtr cur_basis(int n);

/// div(xi_I d_i) = (-1)^{p(xi_I)} d_i xi_I,  div(f) = -d (x) f; C[d]-linear.
ModuleVector div_conformal(const ConformalAlgebra& W, const ModuleVector& x);
ModuleVector div_deformed(const ConformalAlgebra& W, const ModuleVector& x,
                          const Rational& b);

/// Matrix of div_b: rows = Cur Lambda(n) monomials, cols = W_n generators.
PolyMatrix divergence_matrix(const ConformalAlgebra& W, const Rational& b);

// Multiplication by the Grassmann element g as a C[d]-endomorphism of W_n.
PolyMatrix grassmann_mult_matrix(const ConformalAlgebra& W,
                                 const Grassmann& g);

// ModuleVector <-> polynomial column over the generator basis.
std::vector<Poly> to_poly_column(const ModuleVector& v, int ngens);
ModuleVector from_poly_column(const BasisPtr& basis,
                              const std::vector<Poly>& col);

// --- type S families -------------------------------------------------------

struct ConformalSubalgebra {
  AlgebraPtr parent;
  std::string kind;  // "S", "Sb", "Stilde"
  Rational b;
  std::vector<ModuleVector> basis;  // free C[d]-basis over parent generators
  PolyMatrix basis_matrix;          // columns = basis vectors
};

ConformalSubalgebra build_S(int n);
ConformalSubalgebra build_Sb(int n, const Rational& b);
ConformalSubalgebra build_Stilde(int n);

/// The elements (-1)^{p(f)} d(f d_i) + d_i f, which C[d]-generate S_n.
ModuleVector s_generator(const ConformalAlgebra& W, XiMask f, int i);

/// Closure of the basis under the parent bracket (every lambda-coefficient
/// of a basis bracket lies in the C[d]-span of the basis).
CheckReport check_closure(const ConformalSubalgebra& S);

}  // namespace wsck

#endif
