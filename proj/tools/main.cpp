#include <iostream>
#include <string>
#include <vector>

#include "treespan/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return treespan::run_cli(args, std::cout, std::cerr);
}
