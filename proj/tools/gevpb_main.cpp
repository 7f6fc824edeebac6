#include <iostream>
#include <string>
#include <vector>

#include "gevpb/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return gevpb::run_cli(args, std::cout, std::cerr);
}
