#include <iostream>
#include <string>
#include <vector>

#include "unizero/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return unizero::run_cli(args, std::cin, std::cout, std::cerr);
}
