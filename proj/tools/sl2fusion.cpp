#include <iostream>
#include <string>
#include <vector>

#include "sl2fusion/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sl2f::cli::run(args, std::cout, std::cerr);
}
