#include "polymat.hpp"

#include <stdexcept>

namespace wsck {

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix size mismatch");
  PolyMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (a_[i][k].zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.a_[k][j].zero()) continue;
        r.a_[i][j] = r.a_[i][j] + a_[i][k] * o.a_[k][j];
      }
    }
  return r;
}

std::vector<Poly> PolyMatrix::apply(const std::vector<Poly>& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("vector size mismatch");
  std::vector<Poly> y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!a_[i][j].zero() && !x[j].zero()) y[i] = y[i] + a_[i][j] * x[j];
  return y;
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.a_[j][i] = a_[i][j];
  return r;
}

void PolyMatrix::row_swap(int i, int j) { std::swap(a_[i], a_[j]); }
void PolyMatrix::row_scale(int i, const Rational& s) {
  for (auto& p : a_[i]) p = p * s;
}
void PolyMatrix::row_addmul(int dst, int src, const Poly& f) {
  for (int j = 0; j < cols_; ++j) a_[dst][j] = a_[dst][j] + f * a_[src][j];
}
void PolyMatrix::col_swap(int i, int j) {
  for (auto& row : a_) std::swap(row[i], row[j]);
}
void PolyMatrix::col_scale(int j, const Rational& s) {
  for (auto& row : a_) row[j] = row[j] * s;
}
void PolyMatrix::col_addmul(int dst, int src, const Poly& f) {
  for (auto& row : a_) row[dst] = row[dst] + f * row[src];
}

namespace {

// Track S = U A V; inverses maintained by applying inverse ops on the
// other side.
struct SnfWork {
  PolyMatrix S, U, Uinv, V, Vinv;

  void rswap(int i, int j) {
    S.row_swap(i, j);
    U.row_swap(i, j);
    Uinv.col_swap(i, j);
  }
  void rscale(int i, const Rational& s) {
    S.row_scale(i, s);
    U.row_scale(i, s);
    Uinv.col_scale(i, Rational(1) / s);
  }
  void raddmul(int dst, int src, const Poly& f) {
    S.row_addmul(dst, src, f);
    U.row_addmul(dst, src, f);
    Uinv.col_addmul(src, dst, -f);
  }
  void cswap(int i, int j) {
    S.col_swap(i, j);
    V.col_swap(i, j);
    Vinv.row_swap(i, j);
  }
  void cscale(int j, const Rational& s) {
    S.col_scale(j, s);
    V.col_scale(j, s);
    Vinv.row_scale(j, Rational(1) / s);
  }
  void caddmul(int dst, int src, const Poly& f) {
    S.col_addmul(dst, src, f);
    V.col_addmul(dst, src, f);
    Vinv.row_addmul(src, dst, -f);
  }
};

}  // namespace

SmithNF smith_normal_form(const PolyMatrix& A) {
  int n = A.rows(), m = A.cols();
  SnfWork w{A, PolyMatrix::identity(n), PolyMatrix::identity(n),
            PolyMatrix::identity(m), PolyMatrix::identity(m)};

  int steps = std::min(n, m);
  int s = 0;
  for (; s < steps; ++s) {
    // Pivot: lowest-degree nonzero entry in the trailing submatrix.
    int pi = -1, pj = -1, pdeg = -1;
    for (int i = s; i < n; ++i)
      for (int j = s; j < m; ++j) {
        const Poly& e = w.S.at(i, j);
        if (e.zero()) continue;
        if (pdeg < 0 || e.degree() < pdeg) {
          pdeg = e.degree();
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // submatrix is zero
    if (pi != s) w.rswap(s, pi);
    if (pj != s) w.cswap(s, pj);

    for (;;) {
      // Reduce column s below the pivot, then row s right of it.
      bool clean = true;
      for (int i = s + 1; i < n; ++i) {
        if (w.S.at(i, s).zero()) continue;
        Poly q, r;
        w.S.at(i, s).divrem(w.S.at(s, s), q, r);
        w.raddmul(i, s, -q);
        if (!w.S.at(i, s).zero()) clean = false;
      }
      for (int j = s + 1; j < m; ++j) {
        if (w.S.at(s, j).zero()) continue;
        Poly q, r;
        w.S.at(s, j).divrem(w.S.at(s, s), q, r);
        w.caddmul(j, s, -q);
        if (!w.S.at(s, j).zero()) clean = false;
      }
      if (!clean) {
        // Some remainder has lower degree than the pivot; re-pivot on it.
        int bi = -1, bj = -1, bdeg = -1;
        for (int i = s; i < n; ++i)
          for (int j = s; j < m; ++j) {
            const Poly& e = w.S.at(i, j);
            if (e.zero()) continue;
            if (bdeg < 0 || e.degree() < bdeg) {
              bdeg = e.degree();
              bi = i;
              bj = j;
            }
          }
        if (bi != s) w.rswap(s, bi);
        if (bj != s) w.cswap(s, bj);
        continue;
      }
      // Divisibility sweep: pivot must divide every trailing entry.
      bool divides_all = true;
      for (int i = s + 1; i < n && divides_all; ++i)
        for (int j = s + 1; j < m && divides_all; ++j) {
          if (w.S.at(i, j).zero()) continue;
          if (!w.S.at(i, j).divisible_by(w.S.at(s, s))) {
            w.raddmul(s, i, Poly(1));  // bring the offending row in
            divides_all = false;
          }
        }
      if (divides_all) break;
    }
    w.rscale(s, Rational(1) / w.S.at(s, s).lead());  // monic pivot
  }

  SmithNF out;
  out.S = w.S;
  out.U = w.U;
  out.Uinv = w.Uinv;
  out.V = w.V;
  out.Vinv = w.Vinv;
  out.rank = s;
  for (int i = 0; i < s; ++i) out.diag.push_back(w.S.at(i, i));
  return out;
}

KernelImage kernel_image(const PolyMatrix& A) {
  KernelImage out;
  out.snf = smith_normal_form(A);
  int m = A.cols();
  for (int j = out.snf.rank; j < m; ++j) {
    std::vector<Poly> col(A.cols());
    for (int i = 0; i < m; ++i) col[i] = out.snf.V.at(i, j);
    out.kernel.push_back(std::move(col));
  }
  for (int j = 0; j < out.snf.rank; ++j) {
    std::vector<Poly> col(A.rows());
    for (int i = 0; i < A.rows(); ++i)
      col[i] = out.snf.Uinv.at(i, j) * out.snf.diag[j];
    out.image.push_back(std::move(col));
  }
  return out;
}

std::optional<std::vector<Poly>> solve_linear(const SmithNF& snf,
                                              const PolyMatrix& A,
                                              const std::vector<Poly>& v) {
  std::vector<Poly> y = snf.U.apply(v);
  std::vector<Poly> xp(A.cols());
  for (int i = 0; i < A.rows(); ++i) {
    if (i < snf.rank) {
      if (!y[i].divisible_by(snf.diag[i])) return std::nullopt;
      xp[i] = y[i] / snf.diag[i];
    } else if (!y[i].zero()) {
      return std::nullopt;
    }
  }
  return snf.V.apply(xp);
}

bool in_column_span(const SmithNF& snf, const PolyMatrix& A,
                    const std::vector<Poly>& v) {
  return solve_linear(snf, A, v).has_value();
}

bool same_column_span(const PolyMatrix& A, const PolyMatrix& B) {
  if (A.rows() != B.rows()) return false;
  SmithNF sa = smith_normal_form(A);
  SmithNF sb = smith_normal_form(B);
  for (int j = 0; j < B.cols(); ++j) {
    std::vector<Poly> col(B.rows());
    for (int i = 0; i < B.rows(); ++i) col[i] = B.at(i, j);
    if (!in_column_span(sa, A, col)) return false;
  }
  for (int j = 0; j < A.cols(); ++j) {
    std::vector<Poly> col(A.rows());
    for (int i = 0; i < A.rows(); ++i) col[i] = A.at(i, j);
    if (!in_column_span(sb, B, col)) return false;
  }
  return true;
}

CokernelInfo cokernel_info(const PolyMatrix& A) {
  SmithNF s = smith_normal_form(A);
  CokernelInfo info;
  for (auto& d : s.diag)
    if (d.degree() > 0) info.torsion.push_back(d);
  info.free_rank = A.rows() - s.rank;
  return info;
}

}  // namespace wsck
