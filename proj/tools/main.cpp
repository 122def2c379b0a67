#include <iostream>
#include <string>
#include <vector>

#include "verlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return verlab::run_cli(args, std::cout, std::cerr);
}
