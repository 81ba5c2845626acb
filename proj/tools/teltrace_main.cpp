#include <iostream>
#include <string>
#include <vector>

#include "teltrace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return teltrace::run_cli(args, std::cout, std::cerr);
}
