#include <iostream>
#include <string>
#include <vector>

#include "tariffnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tariffnet::run_cli(args, std::cout, std::cerr);
}
