#include <iostream>

#include "toplat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toplat::run_cli(args, std::cout, std::cerr);
}
