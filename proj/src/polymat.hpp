#ifndef WSCK_POLYMAT_HPP
#define WSCK_POLYMAT_HPP

#include <optional>
#include <vector>

#include "poly.hpp"

namespace wsck {

/// Rectangular matrix over Q[d]; columns act as generators of submodules
/// of the free column module, maps act by x -> A x.
class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0) {}
  PolyMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(rows, std::vector<Poly>(cols)) {}

  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.a_[i][i] = Poly(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly& at(int i, int j) { return a_[i][j]; }
  const Poly& at(int i, int j) const { return a_[i][j]; }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  PolyMatrix operator*(const PolyMatrix& o) const;
  std::vector<Poly> apply(const std::vector<Poly>& x) const;
  PolyMatrix transposed() const;

  // In-place elementary operations.
  void row_swap(int i, int j);
  void row_scale(int i, const Rational& s);          // s != 0
  void row_addmul(int dst, int src, const Poly& f);  // row dst += f * row src
  void col_swap(int i, int j);
  void col_scale(int j, const Rational& s);
  void col_addmul(int dst, int src, const Poly& f);

 private:
  int rows_, cols_;
  std::vector<std::vector<Poly>> a_;
};

/// Smith normal form S = U * A * V with unimodular U, V over Q[d].
/// diag holds the nonzero invariant factors (monic, d_i | d_{i+1}).
struct SmithNF {
  PolyMatrix S, U, Uinv, V, Vinv;
  std::vector<Poly> diag;
  int rank = 0;
};

SmithNF smith_normal_form(const PolyMatrix& A);

/// Free basis of ker(A) and im(A) (as column vectors), plus the SNF.
struct KernelImage {
  std::vector<std::vector<Poly>> kernel;  // free C[d]-basis
  std::vector<std::vector<Poly>> image;   // free C[d]-basis
  SmithNF snf;
};

KernelImage kernel_image(const PolyMatrix& A);

// Solve A x = v over Q[d]; nullopt if unsolvable.
std::optional<std::vector<Poly>> solve_linear(const SmithNF& snf,
                                              const PolyMatrix& A,
                                              const std::vector<Poly>& v);

// Does v lie in the column span of A (as a C[d]-submodule)?
bool in_column_span(const SmithNF& snf, const PolyMatrix& A,
                    const std::vector<Poly>& v);

// Equality of the C[d]-submodules spanned by the columns of A and B.
bool same_column_span(const PolyMatrix& A, const PolyMatrix& B);

// Invariant factors of coker(A) = target / im(A): the non-unit diagonal
// entries, plus `free_rank` copies of 0 (free summands).
struct CokernelInfo {
  std::vector<Poly> torsion;  // non-unit invariant factors, monic
  int free_rank = 0;
};
CokernelInfo cokernel_info(const PolyMatrix& A);

}  // namespace wsck

#endif
