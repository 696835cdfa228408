#include <iostream>

#include "intransit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return intransit::cli::dispatch(args, std::cout, std::cerr);
}
