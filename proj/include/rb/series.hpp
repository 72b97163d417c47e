#pragma once

// Truncated Taylor series in one or two variables with interval coefficients.
//
// A MultiSeries stores every coefficient of total degree <= order densely,
// in grade-lexicographic layout.  Each coefficient is a crows x ccols block
// of complex intervals, so the same container handles scalar series
// (1 x 1), the manifold map (n x 1), and the frame bundle (n x n).
//
// The l1 norm with radius weight delta makes the space a Banach algebra
// under the Cauchy product: ||a*b|| <= ||a||.||b|| coefficient-norm-wise,
// where blocks are measured with |.| (scalar), the component sum (vector),
// or the column-sum operator norm (matrix).

#include <vector>

#include "rb/interval.hpp"
#include "rb/ivmatrix.hpp"

namespace rb {

struct MultiSeries {
  int m = 2;       // number of variables, 1 or 2
  int order = 0;   // highest total degree stored
  int crows = 1;   // coefficient block rows
  int ccols = 1;   // coefficient block cols
  std::vector<ComplexInterval> c;

  MultiSeries() = default;
  MultiSeries(int m_, int order_, int crows_, int ccols_);

  static int block_count(int m, int order);
  // Grade-lex position of the multi-index (i, j); j must be 0 when m == 1.
  static int offset(int m, int i, int j);

  int bsize() const { return crows * ccols; }
  bool scalar_blocks() const { return crows == 1 && ccols == 1; }

  ComplexInterval& at(int i, int j = 0, int r = 0, int col = 0);
  const ComplexInterval& at(int i, int j = 0, int r = 0, int col = 0) const;
};

// Visits every stored multi-index of grade g in lex order (i descending is
// not guaranteed; treat the order as opaque).
template <typename F>
void for_each_index_of_grade(int m, int g, F&& f) {
  if (m == 1) {
    f(g, 0);
  } else {
    for (int j = 0; j <= g; ++j) f(g - j, j);
  }
}

template <typename F>
void for_each_index(int m, int order, F&& f) {
  for (int g = 0; g <= order; ++g) for_each_index_of_grade(m, g, f);
}

MultiSeries add(const MultiSeries& a, const MultiSeries& b);
MultiSeries sub(const MultiSeries& a, const MultiSeries& b);
MultiSeries scale(const MultiSeries& a, const ComplexInterval& z);
MultiSeries scale(const MultiSeries& a, const Interval& x);

// Cauchy products, truncated at out_order.  Blocks multiply as matrices;
// a 1 x 1 block on either side acts as a scalar.  The hat variant omits
// every term in which either factor contributes its grade-0 block, which
// is the convolution appearing in the homological equations.
MultiSeries cauchy(const MultiSeries& a, const MultiSeries& b, int out_order);
MultiSeries cauchy_hat(const MultiSeries& a, const MultiSeries& b, int out_order);

MultiSeries project_head(const MultiSeries& a, int N);
MultiSeries project_tail(const MultiSeries& a, int N);

// Sum over grade_lo <= |alpha| <= grade_hi of ||block|| * delta^|alpha|.
Interval norm_l1(const MultiSeries& a, const Interval& delta, int grade_lo,
                 int grade_hi);
inline Interval norm_l1(const MultiSeries& a, const Interval& delta) {
  return norm_l1(a, delta, 0, a.order);
}

// Coefficient-block norm used by norm_l1 (|.|, component sum, or column-sum
// operator norm depending on the block shape).
Interval block_norm(const MultiSeries& a, int i, int j);

// Evaluates the truncated series at sigma (size m).  Requires the upper
// bound of every |sigma_k| to stay within delta; otherwise the series does
// not represent the map there and evaluation refuses.
std::vector<ComplexInterval> eval(const MultiSeries& a,
                                  const std::vector<ComplexInterval>& sigma,
                                  const Interval& delta);

// Partial derivative with respect to variable k (0-based); order drops by 1.
MultiSeries derivative(const MultiSeries& a, int k);

// Extraction and assembly of coefficient blocks.
IntervalMatrix block_matrix(const MultiSeries& a, int i, int j = 0);
void set_block(MultiSeries& a, int i, int j, const IntervalMatrix& M);
MultiSeries component(const MultiSeries& a, int r);          // row r of n x 1 blocks
MultiSeries column(const MultiSeries& a, int col);           // column of n x n blocks
MultiSeries lmul_matrix(const IntervalMatrix& M, const MultiSeries& a);

// CSV rows: m,n,component,re_lo,re_hi,im_lo,im_hi with component = r*ccols+c.
void write_csv(const MultiSeries& a, std::ostream& os);

}  // namespace rb
