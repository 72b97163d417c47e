#include "rb/ivmatrix.hpp"

#include <Eigen/Dense>

namespace rb {

namespace {
void require_same_shape(const IntervalMatrix& x, const IntervalMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix shape mismatch");
}
}  // namespace

IntervalMatrix operator+(const IntervalMatrix& x, const IntervalMatrix& y) {
  require_same_shape(x, y);
  IntervalMatrix r(x.rows, x.cols);
  for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
  return r;
}

IntervalMatrix operator-(const IntervalMatrix& x, const IntervalMatrix& y) {
  require_same_shape(x, y);
  IntervalMatrix r(x.rows, x.cols);
  for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
  return r;
}

IntervalMatrix operator-(const IntervalMatrix& x) {
  IntervalMatrix r(x.rows, x.cols);
  for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = -x.a[k];
  return r;
}

IntervalMatrix operator*(const IntervalMatrix& x, const IntervalMatrix& y) {
  if (x.cols != y.rows) throw Error("matrix shape mismatch");
  IntervalMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const ComplexInterval& xik = x(i, k);
      for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

IntervalMatrix operator*(const ComplexInterval& s, const IntervalMatrix& y) {
  IntervalMatrix r(y.rows, y.cols);
  for (size_t k = 0; k < y.a.size(); ++k) r.a[k] = s * y.a[k];
  return r;
}

IntervalMatrix operator*(const Interval& s, const IntervalMatrix& y) {
  IntervalMatrix r(y.rows, y.cols);
  for (size_t k = 0; k < y.a.size(); ++k) r.a[k] = s * y.a[k];
  return r;
}

IntervalMatrix adjoint(const IntervalMatrix& x) {
  IntervalMatrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = conj(x(i, j));
  return r;
}

IntervalMatrix transpose(const IntervalMatrix& x) {
  IntervalMatrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

IntervalMatrix take_rows(const IntervalMatrix& x, const std::vector<int>& idx) {
  IntervalMatrix r(static_cast<int>(idx.size()), x.cols);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < x.cols; ++j) r(static_cast<int>(i), j) = x(idx[i], j);
  return r;
}

IntervalMatrix take_cols(const IntervalMatrix& x, const std::vector<int>& idx) {
  IntervalMatrix r(x.rows, static_cast<int>(idx.size()));
  for (int i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r(i, static_cast<int>(j)) = x(i, idx[j]);
  return r;
}

Interval mat_norm_col1(const IntervalMatrix& x) {
  if (x.is_zero_sized()) throw Error("norm of empty matrix");
  Interval best(0.0);
  for (int j = 0; j < x.cols; ++j) {
    Interval s(0.0);
    for (int i = 0; i < x.rows; ++i) s += abs(x(i, j));
    best = Interval(std::max(best.lo, s.lo), std::max(best.hi, s.hi));
  }
  return best;
}

Interval mat_norm_inf(const IntervalMatrix& x) {
  if (x.is_zero_sized()) throw Error("norm of empty matrix");
  Interval best(0.0);
  for (int i = 0; i < x.rows; ++i) {
    Interval s(0.0);
    for (int j = 0; j < x.cols; ++j) s += abs(x(i, j));
    best = Interval(std::max(best.lo, s.lo), std::max(best.hi, s.hi));
  }
  return best;
}

namespace {

// Hermitian 2x2 data (d0, d1 real diagonal; off = intersected corner).
struct Herm2 {
  Interval d0, d1;
  ComplexInterval off;
};

Herm2 hermitian2_parts(const IntervalMatrix& x) {
  if (x.rows != 2 || x.cols != 2) throw Error("not a 2x2 matrix");
  if (!x(0, 0).im.contains(0.0) || !x(1, 1).im.contains(0.0))
    throw Error("not Hermitian-enclosable");
  ComplexInterval mirrored = conj(x(1, 0));
  Interval ore, oim;
  if (!try_intersect(x(0, 1).re, mirrored.re, ore) ||
      !try_intersect(x(0, 1).im, mirrored.im, oim))
    throw Error("not Hermitian-enclosable");
  return {x(0, 0).re, x(1, 1).re, ComplexInterval(ore, oim)};
}

// Eigenvalues of a Hermitian 2x2 are mean(d) -/+ sqrt(((d0-d1)/2)^2+|off|^2);
// the radicand is structurally nonnegative in this form.
Interval eig2_hermitian(const IntervalMatrix& x, bool want_max) {
  Herm2 h = hermitian2_parts(x);
  Interval mean = (h.d0 + h.d1) * Interval(0.5);
  Interval rad = sqr((h.d0 - h.d1) * Interval(0.5)) + abs2(h.off);
  if (rad.lo < 0.0) rad = Interval(0.0, std::max(rad.hi, 0.0));
  Interval root = sqrt(rad);
  return want_max ? mean + root : mean - root;
}

double quarter_root_up(double x) {
  Interval r = sqrt(sqrt(Interval(0.0, x)));
  return r.hi;
}

}  // namespace

Interval eig2_hermitian_min(const IntervalMatrix& x) { return eig2_hermitian(x, false); }
Interval eig2_hermitian_max(const IntervalMatrix& x) { return eig2_hermitian(x, true); }

Interval mat_norm_spec(const IntervalMatrix& x) {
  if (x.is_zero_sized()) throw Error("norm of empty matrix");
  // Lower bound: largest column Euclidean norm.
  double lo = 0.0;
  for (int j = 0; j < x.cols; ++j) {
    Interval s(0.0);
    for (int i = 0; i < x.rows; ++i) s += abs2(x(i, j));
    lo = std::max(lo, sqrt(s).lo);
  }
  IntervalMatrix gram = adjoint(x) * x;
  double lam_up;
  if (x.cols == 2) {
    lam_up = std::max(eig2_hermitian_max(gram).hi, 0.0);
  } else {
    lam_up = mat_norm_col1(gram).hi;
    IntervalMatrix g2 = gram * gram;
    lam_up = std::min(lam_up, sqrt(Interval(0.0, mat_norm_col1(g2).hi)).hi);
    IntervalMatrix g4 = g2 * g2;
    lam_up = std::min(lam_up, quarter_root_up(mat_norm_col1(g4).hi));
  }
  double hi = sqrt(Interval(0.0, lam_up)).hi;
  double cross = sqrt(Interval(0.0, (mat_norm_col1(x) * mat_norm_inf(x)).hi)).hi;
  hi = std::min(hi, cross);
  if (lo > hi) lo = hi;  // bounds from different estimators; keep ordered
  return {lo, hi};
}

ComplexInterval det2(const IntervalMatrix& x) {
  if (x.rows != 2 || x.cols != 2) throw Error("not a 2x2 matrix");
  return x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
}

Interval vec_norm_l1(const IntervalMatrix& v) {
  if (v.cols != 1) throw Error("not a column vector");
  Interval s(0.0);
  for (int i = 0; i < v.rows; ++i) s += abs(v(i, 0));
  return s;
}

Interval vec_norm_l2(const IntervalMatrix& v) {
  if (v.cols != 1) throw Error("not a column vector");
  Interval s(0.0);
  for (int i = 0; i < v.rows; ++i) s += abs2(v(i, 0));
  return sqrt(s);
}

IntervalMatrix verified_solve(const IntervalMatrix& A, const IntervalMatrix& B) {
  if (A.rows != A.cols || A.rows != B.rows) throw Error("matrix shape mismatch");
  const int n = A.rows;
  Eigen::MatrixXcd mid(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mid(i, j) = std::complex<double>(A(i, j).re.mid(), A(i, j).im.mid());
  Eigen::MatrixXcd Rm = mid.fullPivLu().inverse();
  if (!Rm.allFinite()) throw Error("linear solve not verified: midpoint inverse failed");

  IntervalMatrix R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      R(i, j) = ComplexInterval(Rm(i, j).real(), Rm(i, j).imag());

  // Contraction certificate: x = x~ + e with e = (I - R*A)e + R*(B - A*x~),
  // so norm_inf(e) <= norm_inf(residual)/(1 - beta) once beta < 1.
  IntervalMatrix C = IntervalMatrix::identity(n) - R * A;
  double beta = mat_norm_inf(C).hi;
  if (!(beta < 1.0))
    throw Error("linear solve not verified: preconditioned defect norm >= 1");

  Eigen::MatrixXcd Bm(n, B.cols);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < B.cols; ++j)
      Bm(i, j) = std::complex<double>(B(i, j).re.mid(), B(i, j).im.mid());
  Eigen::MatrixXcd Xm = Rm * Bm;
  // One step of floating-point iterative refinement: the certified radius
  // below is proportional to the residual of the approximate solution, so
  // sharpening it costs one multiply and tightens the enclosure to ulp level.
  Xm += Rm * (Bm - mid * Xm);

  IntervalMatrix X(n, B.cols);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < B.cols; ++j)
      X(i, j) = ComplexInterval(Xm(i, j).real(), Xm(i, j).imag());

  // Componentwise enclosure: the error e = x - x~ satisfies
  // e = R*(B - A*x~) + C*e, so e lies in resid + C*Ball(norm_inf(e)) with
  // norm_inf(e) <= norm_inf(resid)/(1 - beta).  Keeping resid per component
  // (instead of a uniform ball of its norm) avoids paying the conditioning
  // of A on every component of the width.
  std::vector<double> crow(n, 0.0);
  for (int i = 0; i < n; ++i) {
    Interval s(0.0);
    for (int k = 0; k < n; ++k) s += abs(C(i, k));
    crow[i] = s.hi;
  }
  IntervalMatrix resid = R * (B - A * X);
  IntervalMatrix out(n, B.cols);
  for (int j = 0; j < B.cols; ++j) {
    double rn = 0.0;
    for (int i = 0; i < n; ++i) rn = std::max(rn, abs(resid(i, j)).hi);
    double rho = (Interval(rn) / Interval(detail::add_down(1.0, -beta))).hi;
    for (int i = 0; i < n; ++i) {
      double t = (Interval(crow[i]) * Interval(rho)).hi;
      Interval ball(-t, t);
      out(i, j) = X(i, j) + resid(i, j) + ComplexInterval(ball, ball);
    }
  }
  return out;
}

IntervalMatrix verified_inverse(const IntervalMatrix& A) {
  return verified_solve(A, IntervalMatrix::identity(A.rows));
}

}  // namespace rb
