#include <iostream>
#include <string>
#include <vector>

#include "equilab/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv, argv + argc);
  return equilab::cli::run(args, std::cin, std::cout, std::cerr);
}
