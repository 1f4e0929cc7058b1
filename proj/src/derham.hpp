#ifndef WSCK_DERHAM_HPP
#define WSCK_DERHAM_HPP

#include "confmodule.hpp"
#include "superform.hpp"

namespace wsck {

/// The conformal de Rham complex Omega_n = Cur(Omega(n) + Omega(n) dt),
/// truncated at differential degree jmax (hard error past it).
///
/// The W_n-action and the contraction are constructed exactly through the
/// Laurent realization: a conformal basis form X corresponds to X t^{-1},
/// d^k X to k! X t^{-k-1}, and the lambda-action of D collects
/// sum_j la^j / j! L_{t^j D} on the quotient by non-negative t-powers. The
/// la^0 part reproduces the structure table of the Lie-derivative action;
/// the vector-field part additionally acquires a la-linear dt-insertion
/// term which the module axioms require.
class DeRhamComplex {
 public:
  DeRhamComplex(int n, int jmax);

  int n() const { return n_; }
  int jmax() const { return jmax_; }
  const ConformalModule& module() const { return mod_; }
  const std::vector<FormKey>& keys() const { return keys_; }
  int index_of(const FormKey& k) const { return index_.at(k); }
  int slice_of(int id) const { return keys_[id].form_degree(); }
  const std::vector<int>& slice_ids(int j) const { return slice_ids_[j]; }

  /// tilde-d on a module vector (degree overflow throws).
  ModuleVector tilde_d(const ModuleVector& w) const;
  /// tilde-d computed literally from the structure formula, for
  /// cross-checking the dictionary transport.
  ModuleVector tilde_d_literal(const ModuleVector& w) const;

  /// Matrix of tilde-d from slice j to slice j+1.
  PolyMatrix d_matrix(int j) const;

  /// Lie derivative action (the conformal module structure).
  LambdaValued lie_derivative(const ModuleVector& D,
                              const ModuleVector& w) const;

  /// Contraction, lambda-valued with the sesquilinear extension rule.
  LambdaValued contraction(const ModuleVector& D, const ModuleVector& w) const;

  /// Homotopy operator and the projection: K(dxi_n w) = xi_n w,
  /// eps kills anything involving xi_n or dxi_n.
  ModuleVector homotopy_K(const ModuleVector& w) const;
  ModuleVector epsilon(const ModuleVector& w) const;

  /// Cartan identity for one generator on the whole truncated basis
  /// (forms of degree < jmax so tilde-d stays inside).
  bool cartan_identity_holds(int gen) const;

  /// i_{D1} i_{D2} + (-1)^{(p1+1)(p2+1)} i_{D2} i_{D1} = 0 composed as
  /// lambda/mu-valued operators on the basis.
  bool contraction_anticommutator_holds(int g1, int g2, int* sign_used) const;

 private:
  LambdaValued act_table(int gen, int id, bool contraction) const;
  int n_, jmax_;
  AlgebraPtr W_;
  std::vector<FormKey> keys_;
  std::map<FormKey, int> index_;
  std::vector<std::vector<int>> slice_ids_;
  ConformalModule mod_;
  std::vector<std::vector<LambdaValued>> iota_;
};

struct ExactnessReport {
  bool d_squared_zero = false;
  std::vector<int> exact_slices;     // 2 <= j < jmax with ker = im
  std::vector<int> inexact_slices;   // ker != im there
  bool slice0_kernel_zero = false;
  bool slice1_cokernel_is_dt = false;  // ker/im = C[d]/(d) on the dt class
  bool pass(int jmax) const {
    return d_squared_zero && inexact_slices.empty() && slice0_kernel_zero &&
           slice1_cokernel_is_dt &&
           static_cast<int>(exact_slices.size()) == std::max(0, jmax - 2);
  }
};

ExactnessReport exactness_report(const DeRhamComplex& C);

// --- Laurent side -------------------------------------------------------------

/// Truncated Omega^k_+: monomials with t-powers in [0, T]. d raises nothing
/// but the t-degree by at most one; columns whose image leaves the window
/// are flagged. The restricted duals Theta^k_+ carry the transposed maps
/// d_sharp: Theta^{k+1}_+ -> Theta^k_+ on the dual coordinates.
class LaurentPlusSlice {
 public:
  LaurentPlusSlice(int n, int k, int T);
  int dim() const { return static_cast<int>(keys_.size()); }
  const std::vector<FormKey>& keys() const { return keys_; }

  /// d into the (k+1)-slice as a rational matrix (rows indexed by the
  /// target slice), with per-column window flags.
  std::vector<std::map<int, Rational>> d_matrix(const LaurentPlusSlice& upper,
                                                std::vector<char>* flags) const;

  /// d_sharp: dual of d, i.e. the transpose, mapping upper-slice duals to
  /// this slice's duals. Rows of the result are indexed by this slice.
  static std::vector<std::map<int, Rational>> d_sharp(
      const std::vector<std::map<int, Rational>>& dmat, int src_dim);

 private:
  int n_, k_, T_;
  std::vector<FormKey> keys_;
  std::map<FormKey, int> index_;
};

/// Exactness of the dual complex ... -> Theta^{k+1}_+ -> Theta^k_+ -> ... on
/// the window interior: d_sharp o d_sharp = 0 and ker(d_sharp_k) = im from
/// the slice above, computed over Q away from the flagged boundary.
struct ThetaReport {
  bool dsharp_squared_zero = false;
  int kernel_dim = 0;
  int image_dim = 0;
  bool exact = false;
};
ThetaReport theta_dsharp_report(int n, int k, int T);

/// Truncated Omega^k_-: monomials with t-powers in [-T, -1]; operators act
/// by computing in Omega and keeping negative powers; columns whose image
/// leaves the window are flagged and skipped in kernel/image computations.
class LaurentSlice {
 public:
  LaurentSlice(int n, int k, int T);

  int dim() const { return static_cast<int>(keys_.size()); }
  const std::vector<FormKey>& keys() const { return keys_; }

  /// d into the (k+1)-slice, with the flag set when the window is left.
  SForm d_of(int idx, bool* flagged) const;

  /// Action of a vector field (apply, project to negative powers, flag).
  SForm act(const FormDerivation& D, int idx, bool* flagged) const;

  /// dim ker(d) restricted to unflagged columns.
  int kernel_dim_unflagged() const;

  /// Basis of ker(d) mod im(d) on the unflagged blocks; returns the class
  /// representatives as SForms.
  std::vector<SForm> kernel_mod_image(const LaurentSlice& lower) const;

 private:
  int n_, k_, T_;
  std::vector<FormKey> keys_;
  std::map<FormKey, int> index_;
};

}  // namespace wsck

#endif
