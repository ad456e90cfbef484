#include <cstdlib>
#include <iostream>

#include "schurkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_cache;
  if (const char* p = std::getenv("SCHURKIT_CACHE"); p && *p) env_cache = p;
  return schurkit::cli::run_command(args, std::cout, std::cerr, env_cache);
}
