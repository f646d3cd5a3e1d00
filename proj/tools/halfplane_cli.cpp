// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "halfplane/cli.hpp"

int main(int argc, char** argv) {
  return halfplane::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
