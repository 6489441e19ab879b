#include <iostream>

#include "zeig/cli.hpp"

int main(int argc, char** argv) {
  return zeig::cli::run(argc, argv, std::cout, std::cerr);
}
