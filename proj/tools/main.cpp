#include <iostream>
#include <string>
#include <vector>

#include "xyghz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return xyghz::cli::run(args, std::cout, std::cerr);
}
