#include "krdemazure/cli.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
  try {
    return krd::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "kr-demazure: internal error: " << e.what() << "\n";
    return 4;
  }
}
