#pragma once

#include "zslab/errors.hpp"
#include "zslab/numeric.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace zslab::linalg {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Int>
Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  // invariant: a*x0 + b*y0 = r0, a*x1 + b*y1 = r1
  Int r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    x0 -= q * x1;
    std::swap(x0, x1);
    y0 -= q * y1;
    std::swap(y0, y1);
  }
  if (r0 < 0) {
    r0 = -r0;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return r0;
}

namespace detail {

// Unimodular column elimination of rows [0, pivot_rows) in place. Returns the
// number of pivot columns; on exit, columns [rank, cols) are zero on those
// rows, and applied_rows tells how much of each column participates.
template <class Int>
Eigen::Index eliminate_columns(MatrixX<Int>& s, Eigen::Index pivot_rows) {
  Eigen::Index cols = s.cols();
  Eigen::Index rows = s.rows();
  Eigen::Index lead = 0;
  for (Eigen::Index r = 0; r < pivot_rows && lead < cols; ++r) {
    Eigen::Index j0 = -1;
    for (Eigen::Index j = lead; j < cols; ++j) {
      if (s(r, j) != 0) {
        j0 = j;
        break;
      }
    }
    if (j0 < 0) continue;
    for (Eigen::Index j = j0 + 1; j < cols; ++j) {
      if (s(r, j) == 0) continue;
      Int vj0 = s(r, j0);
      Int vj = s(r, j);
      if (vj % vj0 == 0) {
        Int q = vj / vj0;
        for (Eigen::Index i = r; i < rows; ++i) s(i, j) -= q * s(i, j0);
        continue;
      }
      Int a, b;
      Int g = ext_gcd(vj0, vj, a, b);
      Int u = vj0 / g, v = vj / g;
      for (Eigen::Index i = r; i < rows; ++i) {
        Int c0 = s(i, j0);
        Int c1 = s(i, j);
        s(i, j0) = a * c0 + b * c1;
        s(i, j) = u * c1 - v * c0;
      }
    }
    if (j0 != lead) s.col(j0).swap(s.col(lead));
    ++lead;
  }
  return lead;
}

}  // namespace detail

template <class Int>
struct KernelResult {
  MatrixX<Int> basis;  // columns form a lattice basis of {x : a x = 0}
  Eigen::Index rank;   // rank of the input matrix
};

// Integer kernel via unimodular column elimination of [a; I]: columns whose
// upper part vanishes record, in the lower part, the column operations that
// produced them, which is exactly a basis of the kernel lattice.
template <class Int>
KernelResult<Int> kernel_basis(const MatrixX<Int>& a) {
  Eigen::Index m = a.rows(), k = a.cols();
  MatrixX<Int> s = MatrixX<Int>::Zero(m + k, k);
  s.topRows(m) = a;
  for (Eigen::Index j = 0; j < k; ++j) s(m + j, j) = 1;
  Eigen::Index rank = 0;
  {
    // elimination must touch whole columns, so run it with full row range
    Eigen::Index cols = s.cols();
    Eigen::Index lead = 0;
    for (Eigen::Index r = 0; r < m && lead < cols; ++r) {
      Eigen::Index j0 = -1;
      for (Eigen::Index j = lead; j < cols; ++j) {
        if (s(r, j) != 0) {
          j0 = j;
          break;
        }
      }
      if (j0 < 0) continue;
      for (Eigen::Index j = j0 + 1; j < cols; ++j) {
        if (s(r, j) == 0) continue;
        Int vj0 = s(r, j0);
        Int vj = s(r, j);
        if (vj % vj0 == 0) {
          Int q = vj / vj0;
          s.col(j) -= (q * s.col(j0)).eval();
          continue;
        }
        Int av, bv;
        Int g = ext_gcd(vj0, vj, av, bv);
        Int u = vj0 / g, v = vj / g;
        for (Eigen::Index i = 0; i < s.rows(); ++i) {
          Int c0 = s(i, j0);
          Int c1 = s(i, j);
          s(i, j0) = av * c0 + bv * c1;
          s(i, j) = u * c1 - v * c0;
        }
      }
      if (j0 != lead) s.col(j0).swap(s.col(lead));
      ++lead;
    }
    rank = lead;
  }
  KernelResult<Int> out;
  out.rank = rank;
  out.basis = s.block(m, rank, k, k - rank);
  return out;
}

// gcd over the kernel of a of |1^T x|, without materializing the kernel:
// eliminate [a; 1^T] on the rows of a; surviving columns have zero upper part
// and their last entries generate {1^T x : a x = 0} as a subgroup of Z.
template <class Int>
Int kernel_sum_gcd(const MatrixX<Int>& a) {
  Eigen::Index m = a.rows(), k = a.cols();
  MatrixX<Int> s(m + 1, k);
  s.topRows(m) = a;
  for (Eigen::Index j = 0; j < k; ++j) s(m, j) = 1;
  Eigen::Index rank = detail::eliminate_columns(s, m);
  Int g = 0;
  using boost::multiprecision::gcd;
  for (Eigen::Index j = rank; j < k; ++j) {
    Int v = s(m, j);
    if (v < 0) v = -v;
    g = (g == 0) ? v : gcd(g, v);
  }
  return g;
}

template <class Int>
Eigen::Index integer_rank(const MatrixX<Int>& a) {
  MatrixX<Int> s = a;
  return detail::eliminate_columns(s, s.rows());
}

template <class Scalar>
struct LpResult {
  Scalar value;
  VectorX<Scalar> primal;
};

// maximize c.z subject to e z = b, z >= 0, over an exact ordered field.
// Two-phase dense-tableau simplex; Dantzig pricing switches permanently to
// Bland's rule after a run of degenerate pivots, which guarantees
// termination. Throws DomainError on infeasible or unbounded input.
template <class Scalar>
LpResult<Scalar> simplex_maximize(MatrixX<Scalar> e, VectorX<Scalar> b,
                                  const VectorX<Scalar>& c) {
  Eigen::Index m = e.rows(), n = e.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) < 0) {
      b(i) = -b(i);
      e.row(i) = -e.row(i);
    }
  }
  // tableau columns: n structural + m artificial + rhs
  MatrixX<Scalar> t = MatrixX<Scalar>::Zero(m, n + m + 1);
  t.leftCols(n) = e;
  for (Eigen::Index i = 0; i < m; ++i) t(i, n + i) = 1;
  t.col(n + m) = b;
  std::vector<Eigen::Index> basis(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

  VectorX<Scalar> obj;  // reduced-cost row for the current minimization
  auto price_out = [&](const VectorX<Scalar>& d) {
    obj = VectorX<Scalar>::Zero(n + m + 1);
    obj.head(d.size()) = d;
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::Index bj = basis[static_cast<size_t>(i)];
      if (bj < d.size() && d(bj) != 0) obj -= d(bj) * t.row(i).transpose();
    }
  };

  auto pivot = [&](Eigen::Index row, Eigen::Index col) {
    Scalar p = t(row, col);
    t.row(row) /= p;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == row) continue;
      Scalar f = t(i, col);
      if (f != 0) t.row(i) -= f * t.row(row);
    }
    Scalar f = obj(col);
    if (f != 0) obj -= f * t.row(row).transpose();
    basis[static_cast<size_t>(row)] = col;
  };

  auto run = [&](Eigen::Index allowed_cols) {
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      Eigen::Index enter = -1;
      if (bland) {
        for (Eigen::Index j = 0; j < allowed_cols; ++j) {
          if (obj(j) < 0) {
            enter = j;
            break;
          }
        }
      } else {
        for (Eigen::Index j = 0; j < allowed_cols; ++j) {
          if (obj(j) < 0 && (enter < 0 || obj(j) < obj(enter))) enter = j;
        }
      }
      if (enter < 0) return;
      Eigen::Index leave = -1;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t(i, enter) <= 0) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        Scalar lhs = t(i, n + m) * t(leave, enter);
        Scalar rhs = t(leave, n + m) * t(i, enter);
        if (lhs < rhs ||
            (lhs == rhs && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
          leave = i;
        }
      }
      if (leave < 0) throw DomainError("linear program is unbounded");
      bool degenerate = (t(leave, n + m) == 0);
      pivot(leave, enter);
      if (!bland) {
        degenerate_run = degenerate ? degenerate_run + 1 : 0;
        if (degenerate_run >= 64) bland = true;
      }
    }
  };

  // phase 1: minimize the artificial total
  VectorX<Scalar> d1 = VectorX<Scalar>::Zero(n + m);
  for (Eigen::Index j = n; j < n + m; ++j) d1(j) = 1;
  price_out(d1);
  run(n + m);
  if (obj(n + m) != 0) throw DomainError("linear program is infeasible");
  // drive remaining artificial variables out of the basis
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<size_t>(i)] < n) continue;
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (t(i, j) != 0) {
        col = j;
        break;
      }
    }
    if (col >= 0) pivot(i, col);
    // a fully zero structural row is a redundant constraint; the artificial
    // stays basic at value zero, which is harmless
  }

  // phase 2: minimize -c over the structural columns
  VectorX<Scalar> d2 = VectorX<Scalar>::Zero(n + m);
  d2.head(n) = -c;
  price_out(d2);
  run(n);

  LpResult<Scalar> out;
  out.primal = VectorX<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<size_t>(i)] < n) out.primal(basis[static_cast<size_t>(i)]) = t(i, n + m);
  }
  out.value = c.dot(out.primal);
  return out;
}

}  // namespace zslab::linalg
