// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "bipdo/cli.hpp"

int main(int argc, char** argv) {
  return bipdo::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
