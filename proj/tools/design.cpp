#include <iostream>
#include <string>
#include <vector>

#include "groupdesign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return groupdesign::cli::run(args, std::cout, std::cerr);
}
