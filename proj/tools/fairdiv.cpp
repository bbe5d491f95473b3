#include <iostream>

#include "fairdiv/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return fairdiv::run_cli(std::vector<std::string>(argv, argv + argc), std::cin, std::cout,
                          std::cerr);
}
