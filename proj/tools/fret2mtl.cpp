#include <iostream>

#include "fret2mtl/cli.hpp"

int main(int argc, char** argv) {
  return fret2mtl::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
