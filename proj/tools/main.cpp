#include <iostream>

#include "kcomm/cli.hpp"

int main(int argc, char** argv) {
  return kcomm::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
