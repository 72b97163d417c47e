#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <cstring>

// Accepts --rbcert=<path> ahead of the usual doctest options and exports
// it as RBCERT for the CLI test suite, so the test runner does not depend
// on how the harness sets up its environment.
int main(int argc, char** argv) {
  doctest::Context ctx;
  std::vector<char*> args;
  for (int i = 0; i < argc; ++i) {
    if (std::strncmp(argv[i], "--rbcert=", 9) == 0) {
      setenv("RBCERT", argv[i] + 9, 1);
    } else {
      args.push_back(argv[i]);
    }
  }
  ctx.applyCommandLine(static_cast<int>(args.size()), args.data());
  return ctx.run();
}
