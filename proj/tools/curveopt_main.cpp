#include <iostream>

#include "curveopt/cli.hpp"

int main(int argc, char** argv) {
  return curveopt::dispatch(argc, argv, std::cout, std::cerr);
}
