#include <iostream>

#include "ofdm/harness/cli.hpp"

int main(int argc, char** argv) {
  return ofdm::harness::cli_main(argc, argv, std::cout, std::cerr);
}
