#include <iostream>

#include "dsrl/cli.hpp"

int main(int argc, char** argv) {
  return dsrl::run_cli(argc, argv, std::cout, std::cerr);
}
