#include <iostream>
#include <string>
#include <vector>

#include "lobatto_cli/experiments.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return lobatto::cli::run_cli(args, std::cout, std::cerr);
}
