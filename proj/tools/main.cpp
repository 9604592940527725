#include <iostream>

#include "trisg/cli.hpp"

int main(int argc, char** argv) {
  return trisg::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
