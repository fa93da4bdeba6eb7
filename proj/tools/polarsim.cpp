#include <iostream>
#include <string>
#include <vector>

#include "polarsim/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polarsim::run_cli(args, std::cout, std::cerr);
}
