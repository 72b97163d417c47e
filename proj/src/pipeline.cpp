#include "rb/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "rb/oracle_bistable.hpp"
#include "rb/series.hpp"

namespace rb {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ManifoldParam make_manifold(const RunConfig& cfg, const Spectrum& sp,
                            const FieldSpec& field, Side side) {
  const EigenFrame frame = sh_frame(sp, side);
  check_manifold_resonance(frame);
  const std::vector<ComplexInterval> scalings = {
      scale_for_norm(frame, 0, Interval(cfg.scale)),
      scale_for_norm(frame, 1, Interval(cfg.scale))};
  ManifoldParam man = solve_manifold_coeffs(field, frame, cfg.order, scalings);
  check_conjugate_symmetry(man.P);
  return man;
}

void validate_manifold(ManifoldParam& man, const Spectrum& sp,
                       Certificate& cert, const std::string& tag) {
  man.bounds = manifold_radii_bounds(man, sp);
  find_radius(man.bounds);
  cert.add_value(tag + "_tail_constant", man.bounds.KN);
  cert.add_value(tag + "_defect", man.bounds.Y0);
  cert.add_value(tag + "_lipschitz", man.bounds.Z1);
  cert.add_value(tag + "_radius", Interval(man.bounds.r0));
  cert.inequalities.push_back(
      record_less(tag + "_lipschitz_below_one", man.bounds.Z1, Interval(1.0)));
  const Interval r(man.bounds.r0);
  const Interval p = (man.bounds.Z2_const + man.bounds.Z2_lin * r) * sqr(r) +
                     (man.bounds.Z1 - Interval(1.0)) * r + man.bounds.Y0;
  cert.inequalities.push_back(
      record_less(tag + "_contraction", p, Interval(0.0)));
}

struct SweepSpec {
  double lo = 0.0, hi = 0.0, step = 0.0;
  int count = 0;
};

SweepSpec parse_sweep(const std::string& s) {
  SweepSpec sw;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &sw.lo, &sw.hi, &sw.step,
                  &tail) != 3 ||
      !(sw.step > 0.0) || !(sw.hi >= sw.lo) || !(sw.lo > 0.0))
    throw Error("sweep must be LO:HI:STEP with 0 < LO <= HI and STEP > 0");
  sw.count = static_cast<int>(std::floor((sw.hi - sw.lo) / sw.step + 1e-9)) + 1;
  return sw;
}

std::pair<std::vector<ComplexInterval>, std::vector<ComplexInterval>>
read_frame_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open frame coordinate file");
  try {
    const json j = json::parse(is);
    auto rd = [&](const char* key) {
      std::vector<ComplexInterval> v;
      for (const auto& e : j.at(key))
        v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      if (v.size() != 2)
        throw Error("frame coordinate file needs two entries per pair");
      return v;
    };
    return {rd("beta"), rd("gamma")};
  } catch (const json::exception&) {
    throw Error("malformed frame coordinate file");
  }
}

// Smallest certified matching window length on the sweep grid; records the
// decisive inequality.  Grid points rejected for being too short are
// skipped, not fatal.
double matching_window_stage(const RunConfig& cfg, PipelineState& st,
                             Certificate& cert) {
  const auto coords = read_frame_file(cfg.lplus_file);
  const SweepSpec sw = parse_sweep(cfg.lplus_sweep);
  const DecayConstants dc = decay_constants(st.sp, st.stable);
  const LPlusData lp = lplus_matrices(st.sp);
  cert.add_value("matching_sigma_min", lp.sigma_min);
  for (int k = 0; k < sw.count; ++k) {
    const double L = sw.lo + sw.step * k;
    try {
      const LPlusReport rep =
          check_L_plus(st.sp, dc, lp, L, coords.first, coords.second);
      if (!rep.ok) continue;
      cert.add_value("matching_window_length", Interval(L));
      cert.add_value("matching_eps0", rep.eps0);
      cert.add_value("matching_budget", rep.rhs);
      cert.inequalities.push_back(
          record_less("matching_margin", rep.rhs, rep.lhs));
      return L;
    } catch (const Error&) {
      // window too short at this grid point; try the next one
    }
  }
  throw Error("no certified matching window length on the grid");
}

}  // namespace

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  int T = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (T < 1) T = 1;
  if (T > n) T = n;
  if (T <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> bad{false};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n || bad.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(mu);
        if (!first) first = std::current_exception();
        bad.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

bool run_stages(const RunConfig& cfg, PipelineState& st, Certificate& cert,
                const std::string& upto) {
  const std::vector<std::pair<std::string, std::function<void()>>> stages = {
      {"spectrum",
       [&] {
         st.sp = compute_spectrum(Interval(cfg.mu));
         st.field =
             field_swift_hohenberg(Interval(cfg.mu), Interval(cfg.nu));
         cert.add_value("spectral_decay_rate", st.sp.re_mu_u);
         cert.add_value("dichotomy_constant", st.sp.K);
         cert.add_value("eigenvector_norm", st.sp.evec_norm);
       }},
      {"stable_manifold",
       [&] {
         st.stable = make_manifold(cfg, st.sp, st.field, Side::stable);
         validate_manifold(st.stable, st.sp, cert, "stable_manifold");
       }},
      {"unstable_manifold",
       [&] {
         st.unstable = make_manifold(cfg, st.sp, st.field, Side::unstable);
         validate_manifold(st.unstable, st.sp, cert, "unstable_manifold");
       }},
      {"bundle",
       [&] {
         st.bundle = solve_bundle_coeffs(st.field, st.stable);
         bundle_validate(st.field, st.stable, st.bundle, st.sp);
         cert.add_value("frame_defect", st.bundle.bounds.Y0);
         cert.add_value("frame_lipschitz", st.bundle.bounds.Z);
         cert.add_value("frame_radius", Interval(st.bundle.bounds.r0));
         cert.inequalities.push_back(record_less("frame_lipschitz_below_one",
                                                 st.bundle.bounds.Z,
                                                 Interval(1.0)));
         const Interval r(st.bundle.bounds.r0);
         const Interval p =
             (st.bundle.bounds.Z - Interval(1.0)) * r + st.bundle.bounds.Y0;
         cert.inequalities.push_back(
             record_less("frame_contraction", p, Interval(0.0)));
       }},
      {"tail_window",
       [&] {
         st.decay = decay_constants(st.sp, st.stable);
         st.lminus = find_L_minus(st.decay, st.sp, cfg.lminus_max);
         if (!st.lminus.found)
           throw Error("no certified tail window length on the grid");
         cert.add_value("tail_window_length", Interval(st.lminus.L));
         cert.add_value("tail_window_tau", st.lminus.tau);
         cert.add_value("tail_window_sigma_radius", st.lminus.sigma_radius);
         cert.inequalities.push_back(record_less(
             "tail_window_tau_below_one", st.lminus.tau, Interval(1.0)));
         cert.inequalities.push_back(record_less("tail_window_roughness",
                                                 st.lminus.ratio,
                                                 st.lminus.threshold));
       }},
  };
  for (const auto& [name, fn] : stages) {
    try {
      fn();
      cert.stages.push_back({name, true, ""});
    } catch (const std::exception& e) {
      cert.stages.push_back({name, false, e.what()});
      return false;
    }
    if (name == upto) break;
  }
  return true;
}

int cmd_validate(const RunConfig& cfg) {
  if (cfg.oracle == "bistable") {
    const OracleReport r = run_oracle(cfg.order);
    std::printf("oracle order %d\n", r.order);
    std::printf("  exact invariance:      %s\n", r.exact_invariance ? "ok" : "FAILED");
    std::printf("  exact conjugacy:       %s\n", r.exact_conjugacy ? "ok" : "FAILED");
    std::printf("  exact closed forms:    %s\n", r.exact_closed_forms ? "ok" : "FAILED");
    std::printf("  resonance table:       %s\n", r.resonance_table_ok ? "ok" : "FAILED");
    std::printf("  normal form values:    %s\n", r.normal_form_values_ok ? "ok" : "FAILED");
    std::printf("  deviations contain 0:  %s\n", r.deviations_contain_zero ? "ok" : "FAILED");
    std::printf("  max deviation width:   %s\n", fmt17(r.max_dev_width).c_str());
    std::printf("oracle verdict: %s\n", r.ok() ? "agree" : "DISAGREE");
    return r.ok() ? 0 : 1;
  }
  if (!cfg.oracle.empty()) throw Error("unknown oracle name");

  const auto t0 = std::chrono::steady_clock::now();
  Certificate cert;
  cert.params = {{"mu", hex_double(cfg.mu)},
                 {"nu", hex_double(cfg.nu)},
                 {"order", std::to_string(cfg.order)},
                 {"scale", hex_double(cfg.scale)}};
  PipelineState st;
  bool ok = run_stages(cfg, st, cert, "tail_window");
  if (ok && !cfg.lplus_file.empty() && !cfg.lplus_sweep.empty()) {
    try {
      const double L = matching_window_stage(cfg, st, cert);
      cert.stages.push_back({"matching_window", true, ""});
      std::printf("matching window length: %s\n", fmt17(L).c_str());
    } catch (const std::exception& e) {
      cert.stages.push_back({"matching_window", false, e.what()});
      ok = false;
    }
  }
  cert.finalize();
  cert.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!cfg.out.empty()) write_certificate(cfg.out, cert);
  for (const auto& s : cert.stages) {
    if (s.ok)
      std::printf("stage %-18s ok\n", s.name.c_str());
    else
      std::printf("stage %-18s FAILED: %s\n", s.name.c_str(), s.error.c_str());
  }
  if (st.lminus.found)
    std::printf("tail window length: %s\n", fmt17(st.lminus.L).c_str());
  std::printf("verdict: %s\n", cert.verdict ? "validated" : "not validated");
  return cert.verdict ? 0 : 1;
}

int cmd_export(const RunConfig& cfg) {
  if (cfg.out.empty()) throw Error("export requires --out directory");
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out);
  const Spectrum sp = compute_spectrum(Interval(cfg.mu));
  const FieldSpec field =
      field_swift_hohenberg(Interval(cfg.mu), Interval(cfg.nu));
  const ManifoldParam stable = make_manifold(cfg, sp, field, Side::stable);
  const ManifoldParam unstable = make_manifold(cfg, sp, field, Side::unstable);
  const BundleFrame bf = solve_bundle_coeffs(field, stable);

  auto dump_series = [&](const MultiSeries& a, const char* fname) {
    std::ofstream os(fs::path(cfg.out) / fname, std::ios::binary);
    if (!os) throw Error("cannot open export file");
    write_csv(a, os);
  };
  dump_series(stable.P, "manifold_stable.csv");
  dump_series(unstable.P, "manifold_unstable.csv");
  dump_series(bf.W, "bundle_frame.csv");

  const Interval delta(1.0);
  const int NR = 100, NP = 100;
  // Outward rounding of |sigma| must not push boundary samples outside the
  // closed evaluation disc, so the radial grid stops a hair short of it.
  const double rmax = 1.0 - 1e-12;
  {
    std::vector<std::array<double, 6>> rows(static_cast<size_t>(NR) * NP);
    parallel_for(NR * NP, cfg.threads, [&](int idx) {
      const int i = idx / NP, j = idx % NP;
      const double r = rmax * i / (NR - 1);
      const double phi = 2.0 * M_PI * j / NP;
      const double s = r * std::cos(phi), t = r * std::sin(phi);
      const std::vector<double> u = real_trace(stable.P, s, t, delta);
      rows[static_cast<size_t>(idx)] = {s, t, u[0], u[1], u[2], u[3]};
    });
    std::ofstream os(fs::path(cfg.out) / "pointcloud.csv", std::ios::binary);
    if (!os) throw Error("cannot open export file");
    os << "s,t,u1,u2,u3\n";
    for (const auto& w : rows)
      os << fmt17(w[0]) << ',' << fmt17(w[1]) << ',' << fmt17(w[2]) << ','
         << fmt17(w[3]) << ',' << fmt17(w[4]) << '\n';
  }
  {
    // Tangent field of the opposite-side manifold in eigenbasis
    // coordinates: columns Re/Im of the leading stable and unstable
    // eigenvectors span the 4 real directions.
    Eigen::Matrix4d B;
    for (int r = 0; r < 4; ++r) {
      B(r, 0) = sp.Vhat(r, 0).re.mid();
      B(r, 1) = sp.Vhat(r, 0).im.mid();
      B(r, 2) = sp.Vhat(r, 2).re.mid();
      B(r, 3) = sp.Vhat(r, 2).im.mid();
    }
    const Eigen::PartialPivLU<Eigen::Matrix4d> lu(B);
    const MultiSeries dP = derivative(unstable.P, 0);
    std::vector<std::array<double, 11>> rows(static_cast<size_t>(NR) * NP);
    parallel_for(NR * NP, cfg.threads, [&](int idx) {
      const int i = idx / NP, j = idx % NP;
      const double r = rmax * i / (NR - 1);
      const double phi = 2.0 * M_PI * j / NP;
      const double s = r * std::cos(phi), t = r * std::sin(phi);
      const std::vector<ComplexInterval> sig = {ComplexInterval(s, t),
                                                ComplexInterval(s, -t)};
      const std::vector<double> base = real_trace(unstable.P, s, t, delta);
      const std::vector<ComplexInterval> v = eval(dP, sig, delta);
      Eigen::Vector4d xb, xr, xi;
      for (int k = 0; k < 4; ++k) {
        xb(k) = base[static_cast<size_t>(k)];
        xr(k) = v[static_cast<size_t>(k)].re.mid();
        xi(k) = v[static_cast<size_t>(k)].im.mid();
      }
      const Eigen::Vector4d yb = lu.solve(xb), yr = lu.solve(xr),
                            yi = lu.solve(xi);
      rows[static_cast<size_t>(idx)] = {s,     t,     yb(0), yb(1), yb(2), yr(0),
                                        yr(1), yr(2), yi(0), yi(1), yi(2)};
    });
    std::ofstream os(fs::path(cfg.out) / "bundlecloud.csv", std::ios::binary);
    if (!os) throw Error("cannot open export file");
    os << "s,t,b1,b2,b3,re1,re2,re3,im1,im2,im3\n";
    for (const auto& w : rows) {
      for (size_t k = 0; k < w.size(); ++k)
        os << (k ? "," : "") << fmt17(w[k]);
      os << '\n';
    }
  }
  std::printf("export written to %s\n", cfg.out.c_str());
  return 0;
}

int cmd_lplus(const RunConfig& cfg) {
  if (cfg.lplus_file.empty() || cfg.lplus_sweep.empty())
    throw Error("lplus requires --lplus-file and --lplus-sweep");
  const auto t0 = std::chrono::steady_clock::now();
  Certificate cert;
  cert.params = {{"mu", hex_double(cfg.mu)},
                 {"nu", hex_double(cfg.nu)},
                 {"order", std::to_string(cfg.order)},
                 {"scale", hex_double(cfg.scale)}};
  PipelineState st;
  bool ok = run_stages(cfg, st, cert, "stable_manifold");
  double L = 0.0;
  if (ok) {
    try {
      L = matching_window_stage(cfg, st, cert);
      cert.stages.push_back({"matching_window", true, ""});
    } catch (const std::exception& e) {
      cert.stages.push_back({"matching_window", false, e.what()});
      ok = false;
    }
  }
  cert.finalize();
  cert.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!cfg.out.empty()) write_certificate(cfg.out, cert);
  if (cert.verdict)
    std::printf("smallest certified matching window length: %s\n",
                fmt17(L).c_str());
  else
    std::printf("matching window: none on grid\n");
  return cert.verdict ? 0 : 1;
}

int cmd_recheck(const std::string& path) {
  const int rc = recheck_certificate(path);
  if (rc == 0)
    std::printf("certificate consistent; verdict: validated\n");
  else if (rc == 1)
    std::printf("certificate consistent; verdict: not validated\n");
  else
    std::printf("certificate corrupt\n");
  return rc;
}

}  // namespace rb
