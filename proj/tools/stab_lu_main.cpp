#include <iostream>
#include <string>
#include <vector>

#include "stab_lu/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stab_lu::run_cli(args, std::cout, std::cerr);
}
