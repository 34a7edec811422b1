#include <iostream>

#include "poiname/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return poiname::cli::run(args, std::cout, std::cerr);
}
