#include <iostream>

#include "polydyn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polydyn::run_cli(args, std::cout, std::cerr);
}
