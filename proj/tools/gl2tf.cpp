#include <iostream>

#include "gl2tf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gl2tf::run_cli(args, std::cout, std::cerr);
}
