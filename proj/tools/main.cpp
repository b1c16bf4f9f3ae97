#include <iostream>
#include <string>
#include <vector>

#include "htkgh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return htkgh::run_cli(args, std::cout, std::cerr);
}
