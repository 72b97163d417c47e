#pragma once

#include <initializer_list>
#include <vector>

#include "rb/interval.hpp"

// Dense complex interval matrices. Entries are rectangle enclosures and
// all products and sums are entrywise enclosures of every member result.

namespace rb {

struct IntervalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<ComplexInterval> a;  // row-major

  IntervalMatrix() = default;
  IntervalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  ComplexInterval& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const ComplexInterval& operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  static IntervalMatrix identity(int n) {
    IntervalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ComplexInterval(1.0);
    return m;
  }

  bool is_zero_sized() const { return rows == 0 || cols == 0; }
};

IntervalMatrix operator+(const IntervalMatrix& x, const IntervalMatrix& y);
IntervalMatrix operator-(const IntervalMatrix& x, const IntervalMatrix& y);
IntervalMatrix operator-(const IntervalMatrix& x);
IntervalMatrix operator*(const IntervalMatrix& x, const IntervalMatrix& y);
IntervalMatrix operator*(const ComplexInterval& s, const IntervalMatrix& y);
IntervalMatrix operator*(const Interval& s, const IntervalMatrix& y);

// Conjugate transpose.
IntervalMatrix adjoint(const IntervalMatrix& x);
IntervalMatrix transpose(const IntervalMatrix& x);

// Keep the listed rows (in the given order), all columns.
IntervalMatrix take_rows(const IntervalMatrix& x, const std::vector<int>& idx);
// Keep the listed columns (in the given order), all rows.
IntervalMatrix take_cols(const IntervalMatrix& x, const std::vector<int>& idx);

// Enclosure of the operator 1-norm (max column sum of entry moduli).
Interval mat_norm_col1(const IntervalMatrix& x);
// Enclosure of the operator infinity-norm (max row sum).
Interval mat_norm_inf(const IntervalMatrix& x);

// Enclosure of the spectral norm. The upper endpoint is the minimum of
// several rigorous bounds: sqrt(norm1*norminf), the operator 1-norm of
// the Gram matrix B = A^*A, and Gram power iterates norm1(B^2)^(1/2),
// norm1(B^4)^(1/4) (sound since the spectral radius of a Hermitian
// matrix is bounded by any induced norm). For 2x2 inputs the exact
// closed-form eigenvalue of B is used instead. The lower endpoint is the
// largest column Euclidean norm.
Interval mat_norm_spec(const IntervalMatrix& x);

// Enclosure of the smaller eigenvalue of a 2x2 Hermitian matrix via
// (d0+d1)/2 - sqrt(((d0-d1)/2)^2 + |off|^2). The off-diagonal enclosure
// is intersected with the conjugate of its mirror entry, which is where
// the Hermitian check happens.
Interval eig2_hermitian_min(const IntervalMatrix& x);
// Same closed form with the plus branch.
Interval eig2_hermitian_max(const IntervalMatrix& x);

// 2x2 determinant enclosure.
ComplexInterval det2(const IntervalMatrix& x);

// Vector views: an n-vector is an n-by-1 matrix.
Interval vec_norm_l1(const IntervalMatrix& v);
Interval vec_norm_l2(const IntervalMatrix& v);

// Enclosure of A^{-1}B valid for every member of A and B. Preconditions
// with an approximate floating-point inverse R of mid(A) and certifies
// norm_inf(I - R*A) < 1; throws if the certificate fails.
IntervalMatrix verified_solve(const IntervalMatrix& A, const IntervalMatrix& B);
IntervalMatrix verified_inverse(const IntervalMatrix& A);

}  // namespace rb
