#include <iostream>
#include <string>
#include <vector>

#include "padelab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return padelab::cli::run(args, std::cout, std::cerr);
}
