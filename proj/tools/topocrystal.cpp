#include <iostream>
#include <string>
#include <vector>

#include "topocrystal/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return topocrystal::run(args, std::cout, std::cerr);
}
