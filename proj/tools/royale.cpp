#include <iostream>
#include <string>
#include <vector>

#include "royale/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return royale::cli::run(args, std::cout, std::cerr);
}
