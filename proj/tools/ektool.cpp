#include <iostream>
#include <vector>

#include "ektool_impl.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ektool::run_tool(std::move(args), std::cout);
}
