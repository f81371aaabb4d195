#include <iostream>
#include <string>
#include <vector>

#include "miquel/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return miquel::cli::run(args, std::cout, std::cerr);
}
