#ifndef WSCK_CONFMODULE_HPP
#define WSCK_CONFMODULE_HPP

#include <memory>

#include "glrep.hpp"

namespace wsck {

/// Module over a Lie conformal superalgebra, given by the lambda-action of
/// every algebra generator on every module basis vector; general actions
/// follow from (P(d)a)_la (Q(d)v) = P(-la) Q(la+d) (a_la v).
struct ConformalModule {
  AlgebraPtr alg;
  BasisPtr basis;
  std::vector<std::vector<LambdaValued>> act;  // [gen][basis id]
  std::vector<char> bottom;  // flags the inducing copy F (may be empty)
  bool sl_based = false;     // only divergence-free combinations act correctly
  Rational alpha = Rational(0);      // accumulated twist
  std::shared_ptr<const GlRep> rep;  // set for tensor modules
  std::map<std::pair<XiMask, int>, int> cell;  // (mask, rep index) -> basis id

  int cell_id(XiMask mask, int s) const { return cell.at({mask, s}); }

  // (d + alpha)^k e_id expanded in the plain d-basis; under a twist these
  // dressed cells are the joint Cartan eigenvectors.
  ModuleVector dressed_unit(int id, int k) const {
    ModuleVector v(basis);
    if (is_zero(alpha)) {
      v.add_term(k, id, Rational(1));
      return v;
    }
    for (int r = 0; r <= k; ++r) {
      Rational pw(1);
      for (int q = 0; q < k - r; ++q) pw *= alpha;
      v.add_term(r, id, binom(k, r) * pw);
    }
    return v;
  }
};

using ModulePtr = std::shared_ptr<const ConformalModule>;

LambdaValued mod_act(const ConformalModule& M, const ModuleVector& x,
                     const ModuleVector& m);

/// (M2) on all generator pairs and basis vectors; (M1) holds by the
/// construction of the extension rule.
CheckReport check_module_axioms(const ConformalModule& M);

/// (M2) restricted to pairs from a list of algebra elements (used for the
/// S-families, where only divergence-free combinations act).
CheckReport check_module_axioms_restricted(
    const ConformalModule& M, const std::vector<ModuleVector>& elems);

/// Tensor module Tens(V) = C[d] (x) Lambda(n) (x) V over W_n.
ConformalModule tens(const GlRep& V, AlgebraPtr W);

/// Replace every explicit d in the action values by d + alpha.
ConformalModule twist(const ConformalModule& M, const Rational& alpha);

/// Conformal dual with the contragredient lambda-action.
ConformalModule conformal_dual(const ConformalModule& M);

struct ModuleMorphism {
  ModulePtr src, dst;
  PolyMatrix matrix;  // T(m_j) = sum_i matrix(i,j) n_i
  int parity = 0;
};

bool is_morphism(const ModuleMorphism& T);
ModuleMorphism transpose(const ModuleMorphism& T);

/// Carve the submodule spanned by the given free family out of M, returning
/// it as a module in its own right plus the embedding (throws if the family
/// is not closed under the action).
ModuleMorphism submodule_from_basis(ModulePtr M,
                                    const std::vector<ModuleVector>& vecs,
                                    const std::vector<std::string>& names);

// --- W_1 family -------------------------------------------------------------

ConformalModule build_M_ab(const Rational& a, const Rational& b);
ModuleMorphism build_submodule_N(const Rational& b);  // N -> M(0,b)
ConformalModule build_L0b(const Rational& b);
ConformalModule build_La_minus_a(const Rational& a);
std::pair<Rational, Rational> cl_params(const Rational& delta,
                                        const Rational& Lambda);

// --- Vir demo modules (transpose counterexample) ----------------------------

ConformalModule vir_module_O0();  // L_la m = (la + d) m
ConformalModule vir_module_O1();  // L_la n = d n

/// W_n action on Cur Lambda(n) used by the divergence identity, realized as
/// Tens of the 1-dimensional character c * str. The divergence identity
/// holds for every c at b = 0 but pins c = -1 (the volume-density weight)
/// for the deformed divergence; divergence_module returns that variant.
ConformalModule cur_lambda_module(AlgebraPtr W, const Rational& c);
ConformalModule divergence_module(AlgebraPtr W);

/// div [x_la y] = x_la (div y) - (-1)^{p(x)p(y)} y_{-la-d} (div x),
/// with div replaced by div_b throughout.
bool div_identity_holds(const ConformalModule& curM, const ModuleVector& x,
                        const ModuleVector& y, const Rational& b);

}  // namespace wsck

#endif
