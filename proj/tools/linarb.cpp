#include <iostream>

#include "linarb/cli.hpp"

int main(int argc, char** argv) {
  return linarb::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
