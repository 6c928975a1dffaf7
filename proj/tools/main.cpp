#include <iostream>
#include <string>
#include <vector>

#include "cli_commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lci::cli::run(args, std::cout, std::cerr);
}
