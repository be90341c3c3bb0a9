#include <iostream>
#include <string>
#include <vector>

#include "paincert_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return paincert::cli::main_entry(args, std::cout, std::cerr);
}
