// rbcert: validated pulse-system certificates.
//
//   rbcert validate   run the staged validation and write a certificate
//   rbcert export     write coefficient tables and plot point clouds
//   rbcert lplus      sweep matching window lengths for given coordinates
//   rbcert recheck    re-verify a previously written certificate
//
// Exit codes: 0 success, 1 validation failed, 2 usage or runtime error.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "rb/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"validated pulse-system certificates"};
  app.require_subcommand(1);

  rb::RunConfig cfg;
  if (const char* tn = std::getenv("RB_THREADS")) {
    const int t = std::atoi(tn);
    if (t > 0) cfg.threads = t;
  }
  std::string recheck_path;

  auto add_model_flags = [&](CLI::App* sub) {
    sub->add_option("--mu", cfg.mu, "linear parameter")->capture_default_str();
    sub->add_option("--nu", cfg.nu, "quadratic parameter")->capture_default_str();
    sub->add_option("--order", cfg.order, "truncation order")
        ->check(CLI::Range(3, 200))
        ->capture_default_str();
    sub->add_option("--scale", cfg.scale, "first-order coefficient size")
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output path");
  };

  CLI::App* validate = app.add_subcommand("validate", "run the staged validation");
  add_model_flags(validate);
  validate->add_option("--oracle", cfg.oracle,
                       "compare against a closed-form system instead");
  validate->add_option("--lplus-file", cfg.lplus_file,
                       "JSON frame coordinates for the matching window");
  validate->add_option("--lplus-sweep", cfg.lplus_sweep,
                       "matching window lengths LO:HI:STEP");
  validate->add_option("--lminus-max", cfg.lminus_max,
                       "largest tail window length to try")
      ->capture_default_str();

  CLI::App* exp = app.add_subcommand("export", "write coefficient tables");
  add_model_flags(exp);

  CLI::App* lplus = app.add_subcommand("lplus", "sweep matching window lengths");
  add_model_flags(lplus);
  lplus->add_option("--lplus-file", cfg.lplus_file,
                    "JSON frame coordinates for the matching window");
  lplus->add_option("--lplus-sweep", cfg.lplus_sweep,
                    "matching window lengths LO:HI:STEP");

  CLI::App* recheck = app.add_subcommand("recheck", "re-verify a certificate");
  recheck->add_option("certificate", recheck_path, "certificate file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return rb::cmd_validate(cfg);
    if (exp->parsed()) return rb::cmd_export(cfg);
    if (lplus->parsed()) return rb::cmd_lplus(cfg);
    if (recheck->parsed()) return rb::cmd_recheck(recheck_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
