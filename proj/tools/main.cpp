#include <iostream>
#include <string>
#include <vector>

#include "corot/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return corot::cli::run(args, std::cout, std::cerr);
}
