#pragma once

// Command implementations behind the CLI: the full validation run with
// certificate output, coefficient and point-cloud exports, the matching
// window sweep, and certificate rechecking.

#include <functional>
#include <string>

#include "rb/bundle.hpp"
#include "rb/certificate.hpp"
#include "rb/conjwindow.hpp"
#include "rb/manifold.hpp"
#include "rb/spectrum.hpp"

namespace rb {

struct RunConfig {
  double mu = 0.2;
  double nu = 1.6;
  int order = 35;
  double scale = 0.5;
  std::string out;          // certificate path, or directory for export
  std::string oracle;       // "bistable" runs the closed-form comparison
  std::string lplus_file;   // JSON file with asymptotic frame coordinates
  std::string lplus_sweep;  // "LO:HI:STEP" window lengths
  int threads = 0;          // 0 = hardware concurrency
  double lminus_max = 200.0;
};

// Intermediate products of the staged run.
struct PipelineState {
  Spectrum sp;
  FieldSpec field;
  ManifoldParam stable;
  ManifoldParam unstable;
  BundleFrame bundle;  // frame along the stable manifold
  DecayConstants decay;
  WindowResult lminus;
};

// Runs stages in order, recording one StageRecord each and stopping at the
// first failure; returns false on failure.  `upto` names the last stage to
// run ("spectrum", "stable_manifold", "unstable_manifold", "bundle",
// "tail_window").
bool run_stages(const RunConfig& cfg, PipelineState& st, Certificate& cert,
                const std::string& upto);

int cmd_validate(const RunConfig& cfg);
int cmd_export(const RunConfig& cfg);
int cmd_lplus(const RunConfig& cfg);
int cmd_recheck(const std::string& path);

// Evenly splits [0, n) over worker threads; thread count is presentation
// only and never affects results.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace rb
