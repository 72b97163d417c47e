#include "rb/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace rb {

namespace {

std::vector<int> make_alpha(int d, int i, int j) {
  return d == 1 ? std::vector<int>{i} : std::vector<int>{i, j};
}

std::string triple_text(const std::vector<int>& alpha, int i, int j) {
  std::string s = "(alpha=(";
  for (size_t k = 0; k < alpha.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(alpha[k]);
  }
  s += "), i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) + ")";
  return s;
}

bool dirs_independent(const EigenFrame& f) {
  if (f.d == 1) return abs(f.mu_all[f.dirs[0]]).lo > 0.0;
  if (f.d == 2) {
    const ComplexInterval& a = f.mu_all[f.dirs[0]];
    const ComplexInterval& b = f.mu_all[f.dirs[1]];
    return !(a.re * b.im - a.im * b.re).contains_zero();
  }
  return false;
}

bool exactly_zero(const ComplexInterval& z) {
  return z.re.lo == 0 && z.re.hi == 0 && z.im.lo == 0 && z.im.hi == 0;
}

// (G * W) truncated at out_order, exploiting that every positive-grade
// block of G = DG(P) is q E_{n,1}: rows other than n come from DG(0)
// alone and row n adds the scalar convolution of q with row 1 of W.
MultiSeries dg_convolve(const IntervalMatrix& dg0, const MultiSeries& G,
                        const MultiSeries& W, int out_order) {
  int n = W.crows, d = W.m;
  MultiSeries out(d, out_order, n, n);
  for_each_index(d, std::min(W.order, out_order), [&](int wi, int wj) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        ComplexInterval s{};
        for (int t = 0; t < n; ++t) s += dg0(r, t) * W.at(wi, wj, t, c);
        out.at(wi, wj, r, c) = s;
      }
  });
  for_each_index(d, G.order, [&](int qi, int qj) {
    if (qi + qj == 0) return;
    ComplexInterval q = G.at(qi, qj, n - 1, 0);
    if (exactly_zero(q)) return;
    int room = std::min(W.order, out_order - (qi + qj));
    if (room < 0) return;
    for_each_index(d, room, [&](int wi, int wj) {
      for (int c = 0; c < n; ++c)
        out.at(qi + wi, qj + wj, n - 1, c) += q * W.at(wi, wj, 0, c);
    });
  });
  return out;
}

}  // namespace

bool ResonanceTable::is_resonant(int i, int j, const std::vector<int>& beta) const {
  for (const auto& b : res[i][j])
    if (b == beta) return true;
  return false;
}

int ResonanceTable::total() const {
  int t = 0;
  for (const auto& row : res)
    for (const auto& cell : row) t += static_cast<int>(cell.size());
  return t;
}

int ResonanceTable::max_beta_grade() const {
  int g = 0;
  for (const auto& row : res)
    for (const auto& cell : row)
      for (const auto& b : cell) {
        int s = 0;
        for (int k : b) s += k;
        g = std::max(g, s);
      }
  return g;
}

ComplexInterval bundle_divisor(const EigenFrame& f, const std::vector<int>& alpha,
                               int i, int j) {
  ComplexInterval s = f.mu_all[j] - f.mu_all[i];
  for (int k = 0; k < f.d; ++k)
    s = s + static_cast<double>(alpha[k]) * f.mu_all[f.dirs[k]];
  return s;
}

ResonanceTable bundle_resonance_sets(const EigenFrame& f) {
  ResonanceTable t;
  t.n = f.n;
  t.d = f.d;
  t.cutoff = resonance_scan_cutoff(f, 2);
  t.res.assign(f.n, std::vector<std::vector<std::vector<int>>>(f.n));
  bool indep = dirs_independent(f);
  for (int g = 1; g <= t.cutoff; ++g) {
    for_each_index_of_grade(f.d == 1 ? 1 : 2, g, [&](int a0, int a1) {
      std::vector<int> beta = make_alpha(f.d, a0, a1);
      for (int i = 0; i < f.n; ++i) {
        for (int j = 0; j < f.n; ++j) {
          bool have_lattice = indep &&
                              static_cast<int>(f.lattice[i].size()) == f.d &&
                              static_cast<int>(f.lattice[j].size()) == f.d;
          if (have_lattice) {
            bool zero = true;
            for (int k = 0; k < f.d; ++k)
              if (beta[k] + f.lattice[j][k] - f.lattice[i][k] != 0) {
                zero = false;
                break;
              }
            if (zero) t.res[i][j].push_back(beta);
            continue;
          }
          if (bundle_divisor(f, beta, i, j).contains_zero())
            throw Error("unclassified resonance at " + triple_text(beta, i, j));
        }
      }
    });
  }
  return t;
}

MultiSeries dg_series(const FieldSpec& field, const MultiSeries& P, int order) {
  MultiSeries p1 = component(P, 0);
  MultiSeries pp = cauchy(p1, p1, order);
  MultiSeries G(P.m, order, field.n, field.n);
  set_block(G, 0, 0, field.dg0);
  for_each_index(P.m, order, [&](int i, int j) {
    if (i + j == 0) return;
    ComplexInterval q{};
    if (i + j <= p1.order) q = 2.0 * (field.c2 * p1.at(i, j));
    q += 3.0 * (field.c3 * pp.at(i, j));
    G.at(i, j, field.n - 1, 0) = q;
  });
  return G;
}

BundleFrame solve_bundle_coeffs(const FieldSpec& field, const ManifoldParam& man) {
  const EigenFrame& f = man.frame;
  int n = f.n, d = f.d, N = man.order;
  BundleFrame bf;
  bf.order = N;
  bf.table = bundle_resonance_sets(f);
  bf.Wtilde = MultiSeries(d, N, n, n);
  bf.W = MultiSeries(d, N, n, n);
  bf.A = MultiSeries(d, N, n, n);
  set_block(bf.Wtilde, 0, 0, IntervalMatrix::identity(n));
  set_block(bf.W, 0, 0, f.V);
  for (int i = 0; i < n; ++i) bf.A.at(0, 0, i, i) = f.mu_all[i];

  MultiSeries G = dg_series(field, man.P, N);

  for (int g = 1; g <= N; ++g) {
    std::vector<std::vector<int>> alphas;
    for_each_index_of_grade(d, g, [&](int i, int j) { alphas.push_back(make_alpha(d, i, j)); });
    int cnt = static_cast<int>(alphas.size());

    // S_alpha = G_alpha W_0 + (G hat* W)_alpha - (W hat* A)_alpha.
    std::vector<IntervalMatrix> Ss;
    Ss.reserve(cnt);
    for (int t = 0; t < cnt; ++t) {
      int ai = alphas[t][0], aj = d == 2 ? alphas[t][1] : 0;
      IntervalMatrix S = block_matrix(G, ai, aj) * f.V;
      for (int gb = 1; gb < g; ++gb) {
        for_each_index_of_grade(d, gb, [&](int bi, int bj) {
          if (bi > ai || bj > aj) return;
          ComplexInterval q = G.at(bi, bj, n - 1, 0);
          if (exactly_zero(q)) return;
          // G_beta = q E_{n,1}: the product adds q * (row 1 of W) to row n.
          for (int c = 0; c < n; ++c)
            S(n - 1, c) += q * bf.W.at(ai - bi, aj - bj, 0, c);
        });
      }
      for (const auto& e : bf.entries) {
        int bi = e.beta[0], bj = d == 2 ? e.beta[1] : 0;
        if (bi > ai || bj > aj) continue;
        for (int r = 0; r < n; ++r)
          S(r, e.j) -= bf.W.at(ai - bi, aj - bj, r, e.i) * e.a;
      }
      Ss.push_back(std::move(S));
    }

    // Columns carrying a normal-form entry at this grade are solved through
    // the eigenbasis, where the unknown splits into the resonant slot (the
    // normal-form coefficient) and diagonal divisions on the rest.
    std::vector<std::pair<int, int>> rescols;  // (t, column)
    for (int t = 0; t < cnt; ++t) {
      if (g > bf.table.cutoff) break;
      for (int j = 0; j < n; ++j) {
        bool any = false;
        for (int i = 0; i < n; ++i)
          if (bf.table.is_resonant(i, j, alphas[t])) any = true;
        if (any) rescols.emplace_back(t, j);
      }
    }
    IntervalMatrix stilde;
    if (!rescols.empty()) {
      IntervalMatrix RR(n, static_cast<int>(rescols.size()));
      for (int k = 0; k < static_cast<int>(rescols.size()); ++k)
        for (int r = 0; r < n; ++r) RR(r, k) = Ss[rescols[k].first](r, rescols[k].second);
      stilde = verified_solve(f.V, RR);
    }
    std::vector<std::vector<bool>> solved(cnt, std::vector<bool>(n, false));
    for (int k = 0; k < static_cast<int>(rescols.size()); ++k) {
      auto [t, j] = rescols[k];
      int ai = alphas[t][0], aj = d == 2 ? alphas[t][1] : 0;
      solved[t][j] = true;
      for (int i = 0; i < n; ++i) {
        ComplexInterval st = stilde(i, k);
        if (bf.table.is_resonant(i, j, alphas[t])) {
          bf.A.at(ai, aj, i, j) = st;
          bf.entries.push_back(ResonanceEntry{i, j, alphas[t], st});
        } else {
          ComplexInterval div = bundle_divisor(f, alphas[t], i, j);
          if (div.contains_zero())
            throw Error("unclassified resonance at " + triple_text(alphas[t], i, j));
          bf.Wtilde.at(ai, aj, i, j) = st / div;
        }
      }
      for (int r = 0; r < n; ++r) {
        ComplexInterval s{};
        for (int i = 0; i < n; ++i) s += f.V(r, i) * bf.Wtilde.at(ai, aj, i, j);
        bf.W.at(ai, aj, r, j) = s;
      }
    }

    // Every other column satisfies ((alpha.mu + mu_j) I - DG(0)) W_col = S_col
    // in ambient coordinates; solving against the full matrix keeps the
    // enclosure widths proportional to the solution.  The eigenbasis
    // coordinates are recovered afterwards in one batched solve.
    std::vector<std::pair<int, int>> ambcols;
    for (int t = 0; t < cnt; ++t)
      for (int j = 0; j < n; ++j)
        if (!solved[t][j]) ambcols.emplace_back(t, j);
    IntervalMatrix WA(n, static_cast<int>(ambcols.size()));
    for (int k = 0; k < static_cast<int>(ambcols.size()); ++k) {
      auto [t, j] = ambcols[k];
      int ai = alphas[t][0], aj = d == 2 ? alphas[t][1] : 0;
      ComplexInterval am = f.mu_all[j];
      for (int c = 0; c < d; ++c)
        am += static_cast<double>(alphas[t][c]) * f.mu_all[f.dirs[c]];
      for (int i = 0; i < n; ++i) {
        ComplexInterval div = bundle_divisor(f, alphas[t], i, j);
        if (div.contains_zero())
          throw Error("unclassified resonance at " + triple_text(alphas[t], i, j));
      }
      IntervalMatrix M(n, n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) M(r, c) = ComplexInterval{} - field.dg0(r, c);
        M(r, r) += am;
      }
      IntervalMatrix b(n, 1);
      for (int r = 0; r < n; ++r) b(r, 0) = Ss[t](r, j);
      IntervalMatrix x = verified_solve(M, b);
      for (int r = 0; r < n; ++r) {
        bf.W.at(ai, aj, r, j) = x(r, 0);
        WA(r, k) = x(r, 0);
      }
    }
    if (!ambcols.empty()) {
      IntervalMatrix WT = verified_solve(f.V, WA);
      for (int k = 0; k < static_cast<int>(ambcols.size()); ++k) {
        auto [t, j] = ambcols[k];
        int ai = alphas[t][0], aj = d == 2 ? alphas[t][1] : 0;
        for (int i = 0; i < n; ++i) bf.Wtilde.at(ai, aj, i, j) = WT(i, k);
      }
    }
  }
  return bf;
}

MultiSeries conjugacy_residual(const FieldSpec& field, const ManifoldParam& man,
                               const BundleFrame& bf) {
  const EigenFrame& f = man.frame;
  int N = bf.order;
  MultiSeries G = dg_series(field, man.P, N);
  MultiSeries lhs = cauchy(G, bf.W, N);
  MultiSeries wa = cauchy(bf.W, bf.A, N);
  MultiSeries res = sub(lhs, wa);
  for_each_index(f.d, N, [&](int i, int j) {
    ComplexInterval am = static_cast<double>(i) * f.mu_all[f.dirs[0]];
    if (f.d == 2) am += static_cast<double>(j) * f.mu_all[f.dirs[1]];
    for (int r = 0; r < f.n; ++r)
      for (int c = 0; c < f.n; ++c)
        res.at(i, j, r, c) -= am * bf.W.at(i, j, r, c);
  });
  return res;
}

Interval bundle_KN_col(const Spectrum& sp, int N, bool tangent_col) {
  int k = tangent_col ? N + 1 : N - 1;
  if (k < 1) throw Error("order too small for bundle tail constants");
  return Interval{1.0, 1.0} / (static_cast<double>(k) * sp.re_mu_u);
}

void bundle_validate(const FieldSpec& field, const ManifoldParam& man,
                     BundleFrame& bf, const Spectrum& sp) {
  if (field.n != 4) throw Error("bundle validation is specific to the quartet system");
  if (!man.bounds.validated)
    throw Error("manifold radius must be validated before the bundle");
  const EigenFrame& f = man.frame;
  int n = f.n, d = f.d, N = bf.order;
  Interval delta{1.0, 1.0};
  Interval eps{man.bounds.r0, man.bounds.r0};
  Interval a2 = abs(field.c2), a3 = abs(field.c3);

  MultiSeries p1 = component(man.P, 0);
  Interval p1_head = norm_l1(p1, delta, 0, N);
  // |f'(p1) - f'(p1bar)| over the validated ball around the truncation.
  Interval eps_inf = 2.0 * a2 * eps + 3.0 * a3 * (2.0 * p1_head * eps + sqr(eps));

  Interval Vn = mat_norm_col1(f.V);
  Interval Vin = mat_norm_col1(f.Vinv);

  BundleBounds b;
  b.KNj.resize(n);
  b.Ya.assign(n, Interval{0.0, 0.0});
  b.Yb.assign(n, Interval{0.0, 0.0});
  b.Yc.assign(n, Interval{0.0, 0.0});
  b.Za.assign(n, Interval{0.0, 0.0});
  b.Zb.assign(n, Interval{0.0, 0.0});
  b.Zc.assign(n, Interval{0.0, 0.0});
  for (int j = 0; j < n; ++j) b.KNj[j] = bundle_KN_col(sp, N, j < d);

  MultiSeries G = dg_series(field, man.P, 2 * N);

  // Y^a: actual-divisor bound on the polynomial tail of G * W.
  MultiSeries GW = dg_convolve(field.dg0, G, bf.W, 3 * N);
  for (int g = N + 1; g <= 3 * N; ++g) {
    std::vector<std::vector<int>> alphas;
    for_each_index_of_grade(d, g, [&](int i, int j) { alphas.push_back(make_alpha(d, i, j)); });
    int cnt = static_cast<int>(alphas.size());
    IntervalMatrix RHS(n, n * cnt);
    for (int t = 0; t < cnt; ++t) {
      int ai = alphas[t][0], aj = d == 2 ? alphas[t][1] : 0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) RHS(r, t * n + c) = GW.at(ai, aj, r, c);
    }
    IntervalMatrix X = verified_solve(f.V, RHS);
    Interval w = pow_int(delta, g);
    for (int t = 0; t < cnt; ++t) {
      for (int j = 0; j < n; ++j) {
        Interval s{0.0, 0.0};
        for (int i = 0; i < n; ++i)
          s += abs(X(i, t * n + j)) / abs(bundle_divisor(f, alphas[t], i, j));
        b.Ya[j] += s * w;
      }
    }
  }

  // Y^b: interpolation error of DG along the true manifold.
  for (int j = 0; j < n; ++j)
    b.Yb[j] = b.KNj[j] * Vin * eps_inf * norm_l1(column(bf.W, j), delta, 0, N);

  // Y^c: secular terms pushed into the tail by the resonant entries.
  int mb = std::max(bf.table.max_beta_grade(), 1);
  for (const auto& e : bf.entries) {
    Interval amag = abs(e.a);
    Interval sum{0.0, 0.0};
    for (int g = N + 1; g <= N + mb; ++g) {
      Interval w = pow_int(delta, g);
      for_each_index_of_grade(d, g, [&](int ai, int aj) {
        int bi = e.beta[0], bj = d == 2 ? e.beta[1] : 0;
        if (bi > ai || bj > aj) return;
        if (ai - bi + (aj - bj) > N) return;
        std::vector<int> alpha = make_alpha(d, ai, aj);
        Interval s{0.0, 0.0};
        for (int l = 0; l < n; ++l)
          s += abs(bf.Wtilde.at(ai - bi, aj - bj, l, e.i)) /
               abs(bundle_divisor(f, alpha, l, e.j));
        sum += s * w;
      });
    }
    b.Yc[e.j] += amag * sum;
  }

  // Z^a: Lipschitz constant of the convolution with the head of DG(P).
  Interval za_content{0.0, 0.0};
  for_each_index(d, 2 * N, [&](int i, int j) {
    if (i + j == 0) return;
    IntervalMatrix T = f.Vinv * block_matrix(G, i, j) * f.V;
    za_content += mat_norm_col1(T) * pow_int(delta, i + j);
  });
  for (int j = 0; j < n; ++j) b.Za[j] = b.KNj[j] * za_content;

  // Z^b: Lipschitz constant of the DG interpolation error.
  for (int j = 0; j < n; ++j) b.Zb[j] = b.KNj[j] * eps_inf * Vin * Vn;

  // Z^c: Lipschitz constant of the resonant coupling, with the shifted
  // tail constant because the coupling raises the grade by at least one.
  for (const auto& e : bf.entries)
    b.Zc[e.j] += abs(e.a) * bundle_KN_col(sp, N + 2, e.j < d);

  b.Y0 = Interval{0.0, 0.0};
  b.Z = Interval{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    Interval y = b.Ya[j] + b.Yb[j] + b.Yc[j];
    Interval z = b.Za[j] + b.Zb[j] + b.Zc[j];
    b.Y0 = Interval{std::max(b.Y0.lo, y.lo), std::max(b.Y0.hi, y.hi)};
    b.Z = Interval{std::max(b.Z.lo, z.lo), std::max(b.Z.hi, z.hi)};
  }

  if (!(b.Z.hi < 1.0)) throw Error("bundle contraction not verified");
  for (int k = 0; k < 40; ++k) {
    double r = 1e-18 * std::pow(1e16, k / 39.0);
    Interval rr{r, r};
    Interval p = (b.Z - 1.0) * rr + b.Y0;
    if (p.hi < 0.0) {
      b.r0 = r;
      b.validated = true;
      bf.bounds = b;
      return;
    }
  }
  throw Error("bundle contraction not verified");
}

IntervalMatrix normal_form_fundamental(const BundleFrame& bf, const EigenFrame& f,
                                       const std::vector<ComplexInterval>& sigma0,
                                       const Interval& dx) {
  std::set<int> targets, sources;
  for (const auto& e : bf.entries) {
    targets.insert(e.i);
    sources.insert(e.j);
    if (e.i == e.j) throw Error("normal form has a diagonal resonance");
  }
  for (int i : targets)
    if (sources.count(i)) throw Error("normal form has chained resonances");
  if (static_cast<int>(sigma0.size()) != f.d) throw Error("base point arity mismatch");

  IntervalMatrix M(f.n, f.n);
  for (int j = 0; j < f.n; ++j) M(j, j) = exp(f.mu_all[j] * dx);
  for (const auto& e : bf.entries) {
    ComplexInterval mono{Interval{1.0, 1.0}, Interval{0.0, 0.0}};
    for (int k = 0; k < f.d; ++k)
      for (int p = 0; p < e.beta[k]; ++p) mono = mono * sigma0[k];
    M(e.i, e.j) = e.a * dx * exp(f.mu_all[e.i] * dx) * mono;
  }
  return M;
}

}  // namespace rb
