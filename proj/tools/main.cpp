#include <iostream>

#include "cli.hpp"

int main(int argc, char **argv) {
  return pareto_cfar::cli::run(argc, argv, std::cout, std::cerr);
}
