#include <iostream>
#include <string>
#include <vector>

#include "ltiframe/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ltiframe::cli::run(args, std::cout, std::cerr);
}
