#include <iostream>
#include <string>
#include <vector>

#include "pgblock/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pgblock::cli::run(args, std::cin, std::cout, std::cerr);
}
