#include <iostream>

#include "cubepack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cubepack::cli::run(args, std::cout, std::cerr);
}
