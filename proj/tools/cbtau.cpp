#include <iostream>

#include "cbtau/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cbtau::run_cli(args, std::cout, std::cerr);
}
