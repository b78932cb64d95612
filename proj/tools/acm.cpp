#include <iostream>
#include <string>
#include <vector>

#include "acm/driver.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return acm::run_cli(args, std::cout, std::cerr);
}
