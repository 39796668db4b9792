#include <iostream>
#include <string>
#include <vector>

#include "stabring/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stabring::cmd_dispatch(std::move(args), std::cout);
}
