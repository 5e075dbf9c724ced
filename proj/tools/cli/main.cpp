#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return northpole::cli::run(argc, argv, std::cout, std::cerr);
}
