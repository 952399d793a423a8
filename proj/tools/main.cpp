#include <iostream>

#include "isochrone/cli.hpp"

int main(int argc, char** argv) {
  return isochrone::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
