#include <iostream>
#include <string>
#include <vector>

#include "oneclock/cli_io.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return oneclock::RunCli(args, std::cout, std::cerr);
}
