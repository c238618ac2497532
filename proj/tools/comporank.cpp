#include <iostream>

#include "comporank/cli.hpp"

int main(int argc, char** argv) {
  return comporank::run_cli(argc, argv, std::cout, std::cerr);
}
