#include <iostream>

#include "qqinv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qqinv::cli::run(args, std::cout, std::cerr);
}
