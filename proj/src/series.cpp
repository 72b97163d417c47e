#include "rb/series.hpp"

#include <cstdio>
#include <ostream>

namespace rb {

MultiSeries::MultiSeries(int m_, int order_, int crows_, int ccols_)
    : m(m_), order(order_), crows(crows_), ccols(ccols_) {
  if (m != 1 && m != 2) throw Error("series arity must be 1 or 2");
  if (order < 0 || crows < 1 || ccols < 1) throw Error("bad series shape");
  c.assign(static_cast<size_t>(block_count(m, order)) * bsize(), ComplexInterval{});
}

int MultiSeries::block_count(int m, int order) {
  return m == 1 ? order + 1 : (order + 1) * (order + 2) / 2;
}

int MultiSeries::offset(int m, int i, int j) {
  return m == 1 ? i : (i + j) * (i + j + 1) / 2 + j;
}

ComplexInterval& MultiSeries::at(int i, int j, int r, int col) {
  return c[static_cast<size_t>(offset(m, i, j)) * bsize() + r * ccols + col];
}

const ComplexInterval& MultiSeries::at(int i, int j, int r, int col) const {
  return c[static_cast<size_t>(offset(m, i, j)) * bsize() + r * ccols + col];
}

namespace {

void require_same_shape(const MultiSeries& a, const MultiSeries& b) {
  if (a.m != b.m || a.crows != b.crows || a.ccols != b.ccols)
    throw Error("series shape mismatch");
}

bool block_is_zero(const MultiSeries& a, int i, int j) {
  const ComplexInterval* p = &a.c[static_cast<size_t>(MultiSeries::offset(a.m, i, j)) * a.bsize()];
  for (int k = 0; k < a.bsize(); ++k)
    if (p[k].re.lo != 0 || p[k].re.hi != 0 || p[k].im.lo != 0 || p[k].im.hi != 0)
      return false;
  return true;
}

}  // namespace

MultiSeries add(const MultiSeries& a, const MultiSeries& b) {
  require_same_shape(a, b);
  MultiSeries out(a.m, std::max(a.order, b.order), a.crows, a.ccols);
  for_each_index(out.m, out.order, [&](int i, int j) {
    for (int r = 0; r < out.crows; ++r)
      for (int col = 0; col < out.ccols; ++col) {
        ComplexInterval s{};
        if (i + j <= a.order) s = s + a.at(i, j, r, col);
        if (i + j <= b.order) s = s + b.at(i, j, r, col);
        out.at(i, j, r, col) = s;
      }
  });
  return out;
}

MultiSeries sub(const MultiSeries& a, const MultiSeries& b) {
  require_same_shape(a, b);
  MultiSeries out(a.m, std::max(a.order, b.order), a.crows, a.ccols);
  for_each_index(out.m, out.order, [&](int i, int j) {
    for (int r = 0; r < out.crows; ++r)
      for (int col = 0; col < out.ccols; ++col) {
        ComplexInterval s{};
        if (i + j <= a.order) s = s + a.at(i, j, r, col);
        if (i + j <= b.order) s = s - b.at(i, j, r, col);
        out.at(i, j, r, col) = s;
      }
  });
  return out;
}

MultiSeries scale(const MultiSeries& a, const ComplexInterval& z) {
  MultiSeries out = a;
  for (auto& e : out.c) e = e * z;
  return out;
}

MultiSeries scale(const MultiSeries& a, const Interval& x) {
  return scale(a, ComplexInterval{x, Interval{0.0, 0.0}});
}

namespace {

MultiSeries cauchy_impl(const MultiSeries& a, const MultiSeries& b, int out_order,
                        bool hat) {
  if (a.m != b.m) throw Error("series arity mismatch");
  int orows, ocols;
  if (a.scalar_blocks()) {
    orows = b.crows; ocols = b.ccols;
  } else if (b.scalar_blocks()) {
    orows = a.crows; ocols = a.ccols;
  } else if (a.ccols == b.crows) {
    orows = a.crows; ocols = b.ccols;
  } else {
    throw Error("series block shapes are not composable");
  }
  MultiSeries out(a.m, out_order, orows, ocols);
  int ga_min = hat ? 1 : 0;
  for (int ga = ga_min; ga <= std::min(a.order, out_order); ++ga) {
    int gb_min = hat ? 1 : 0;
    int gb_max = std::min(b.order, out_order - ga);
    if (gb_max < gb_min) continue;
    for_each_index_of_grade(a.m, ga, [&](int ia, int ja) {
      if (block_is_zero(a, ia, ja)) return;
      const ComplexInterval* pa = &a.c[static_cast<size_t>(MultiSeries::offset(a.m, ia, ja)) * a.bsize()];
      for (int gb = gb_min; gb <= gb_max; ++gb) {
        for_each_index_of_grade(b.m, gb, [&](int ib, int jb) {
          if (block_is_zero(b, ib, jb)) return;
          const ComplexInterval* pb = &b.c[static_cast<size_t>(MultiSeries::offset(b.m, ib, jb)) * b.bsize()];
          ComplexInterval* po = &out.c[static_cast<size_t>(MultiSeries::offset(out.m, ia + ib, ja + jb)) * out.bsize()];
          if (a.scalar_blocks()) {
            for (int k = 0; k < b.bsize(); ++k) po[k] = po[k] + pa[0] * pb[k];
          } else if (b.scalar_blocks()) {
            for (int k = 0; k < a.bsize(); ++k) po[k] = po[k] + pa[k] * pb[0];
          } else {
            for (int r = 0; r < a.crows; ++r)
              for (int col = 0; col < b.ccols; ++col) {
                ComplexInterval s = po[r * ocols + col];
                for (int t = 0; t < a.ccols; ++t)
                  s = s + pa[r * a.ccols + t] * pb[t * b.ccols + col];
                po[r * ocols + col] = s;
              }
          }
        });
      }
    });
  }
  return out;
}

}  // namespace

MultiSeries cauchy(const MultiSeries& a, const MultiSeries& b, int out_order) {
  return cauchy_impl(a, b, out_order, false);
}

MultiSeries cauchy_hat(const MultiSeries& a, const MultiSeries& b, int out_order) {
  return cauchy_impl(a, b, out_order, true);
}

MultiSeries project_head(const MultiSeries& a, int N) {
  MultiSeries out(a.m, std::min(N, a.order), a.crows, a.ccols);
  std::copy(a.c.begin(),
            a.c.begin() + static_cast<size_t>(MultiSeries::block_count(a.m, out.order)) * a.bsize(),
            out.c.begin());
  return out;
}

MultiSeries project_tail(const MultiSeries& a, int N) {
  MultiSeries out = a;
  size_t keep = static_cast<size_t>(MultiSeries::block_count(a.m, std::min(N, a.order))) * a.bsize();
  std::fill(out.c.begin(), out.c.begin() + keep, ComplexInterval{});
  return out;
}

Interval block_norm(const MultiSeries& a, int i, int j) {
  const ComplexInterval* p = &a.c[static_cast<size_t>(MultiSeries::offset(a.m, i, j)) * a.bsize()];
  if (a.scalar_blocks()) return abs(p[0]);
  if (a.ccols == 1) {
    Interval s{0.0, 0.0};
    for (int r = 0; r < a.crows; ++r) s = s + abs(p[r]);
    return s;
  }
  Interval best{0.0, 0.0};
  for (int col = 0; col < a.ccols; ++col) {
    Interval s{0.0, 0.0};
    for (int r = 0; r < a.crows; ++r) s = s + abs(p[r * a.ccols + col]);
    best = Interval{std::max(best.lo, s.lo), std::max(best.hi, s.hi)};
  }
  return best;
}

Interval norm_l1(const MultiSeries& a, const Interval& delta, int grade_lo,
                 int grade_hi) {
  Interval total{0.0, 0.0};
  grade_hi = std::min(grade_hi, a.order);
  for (int g = std::max(grade_lo, 0); g <= grade_hi; ++g) {
    Interval w = pow_int(delta, g);
    Interval gs{0.0, 0.0};
    for_each_index_of_grade(a.m, g, [&](int i, int j) { gs = gs + block_norm(a, i, j); });
    total = total + gs * w;
  }
  return total;
}

std::vector<ComplexInterval> eval(const MultiSeries& a,
                                  const std::vector<ComplexInterval>& sigma,
                                  const Interval& delta) {
  if (static_cast<int>(sigma.size()) != a.m) throw Error("evaluation arity mismatch");
  for (const auto& s : sigma)
    if (!(abs(s).hi <= delta.hi)) throw Error("outside domain of parameterization");
  // Power tables keep the dependency structure simple; the order is small.
  std::vector<std::vector<ComplexInterval>> pw(a.m);
  for (int k = 0; k < a.m; ++k) {
    pw[k].resize(a.order + 1);
    pw[k][0] = ComplexInterval{Interval{1.0, 1.0}, Interval{0.0, 0.0}};
    for (int d = 1; d <= a.order; ++d) pw[k][d] = pw[k][d - 1] * sigma[k];
  }
  std::vector<ComplexInterval> out(a.bsize());
  for_each_index(a.m, a.order, [&](int i, int j) {
    ComplexInterval mono = pw[0][i];
    if (a.m == 2) mono = mono * pw[1][j];
    const ComplexInterval* p = &a.c[static_cast<size_t>(MultiSeries::offset(a.m, i, j)) * a.bsize()];
    for (int k = 0; k < a.bsize(); ++k) out[k] = out[k] + p[k] * mono;
  });
  return out;
}

MultiSeries derivative(const MultiSeries& a, int k) {
  if (k < 0 || k >= a.m) throw Error("derivative variable out of range");
  MultiSeries out(a.m, std::max(a.order - 1, 0), a.crows, a.ccols);
  if (a.order == 0) return out;
  for_each_index(out.m, out.order, [&](int i, int j) {
    int si = i + (k == 0 ? 1 : 0);
    int sj = j + (k == 1 ? 1 : 0);
    double f = k == 0 ? si : sj;
    Interval fac{f, f};
    for (int r = 0; r < out.crows; ++r)
      for (int col = 0; col < out.ccols; ++col)
        out.at(i, j, r, col) = a.at(si, sj, r, col) * fac;
  });
  return out;
}

IntervalMatrix block_matrix(const MultiSeries& a, int i, int j) {
  IntervalMatrix M(a.crows, a.ccols);
  for (int r = 0; r < a.crows; ++r)
    for (int col = 0; col < a.ccols; ++col) M(r, col) = a.at(i, j, r, col);
  return M;
}

void set_block(MultiSeries& a, int i, int j, const IntervalMatrix& M) {
  if (M.rows != a.crows || M.cols != a.ccols) throw Error("block shape mismatch");
  for (int r = 0; r < a.crows; ++r)
    for (int col = 0; col < a.ccols; ++col) a.at(i, j, r, col) = M(r, col);
}

MultiSeries component(const MultiSeries& a, int r) {
  if (a.ccols != 1) throw Error("component extraction needs column blocks");
  MultiSeries out(a.m, a.order, 1, 1);
  for_each_index(a.m, a.order, [&](int i, int j) { out.at(i, j) = a.at(i, j, r, 0); });
  return out;
}

MultiSeries column(const MultiSeries& a, int col) {
  MultiSeries out(a.m, a.order, a.crows, 1);
  for_each_index(a.m, a.order, [&](int i, int j) {
    for (int r = 0; r < a.crows; ++r) out.at(i, j, r, 0) = a.at(i, j, r, col);
  });
  return out;
}

MultiSeries lmul_matrix(const IntervalMatrix& M, const MultiSeries& a) {
  if (M.cols != a.crows) throw Error("matrix/series shapes are not composable");
  MultiSeries out(a.m, a.order, M.rows, a.ccols);
  for_each_index(a.m, a.order, [&](int i, int j) {
    for (int r = 0; r < M.rows; ++r)
      for (int col = 0; col < a.ccols; ++col) {
        ComplexInterval s{};
        for (int t = 0; t < M.cols; ++t) s = s + M(r, t) * a.at(i, j, t, col);
        out.at(i, j, r, col) = s;
      }
  });
  return out;
}

void write_csv(const MultiSeries& a, std::ostream& os) {
  os << "m,n,component,re_lo,re_hi,im_lo,im_hi\n";
  char buf[256];
  for_each_index(a.m, a.order, [&](int i, int j) {
    for (int r = 0; r < a.crows; ++r)
      for (int col = 0; col < a.ccols; ++col) {
        const ComplexInterval& z = a.at(i, j, r, col);
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g,%.17g,%.17g\n", i, j,
                      r * a.ccols + col, z.re.lo, z.re.hi, z.im.lo, z.im.hi);
        os << buf;
      }
  });
}

}  // namespace rb
