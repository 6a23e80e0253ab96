#include <iostream>
#include <string>
#include <vector>

#include "hierfix/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hierfix::run_cli(args, std::cout, std::cerr);
}
