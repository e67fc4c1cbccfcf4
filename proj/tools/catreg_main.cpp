#include <iostream>

#include "catreg/cli.hpp"

int main(int argc, char** argv) {
  return catreg::cli::main_entry(argc, argv, std::cout, std::cerr);
}
