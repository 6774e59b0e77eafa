#include <iostream>
#include <string>
#include <vector>

#include "lfmt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lfmt::run_cli(args, std::cout, std::cerr);
}
