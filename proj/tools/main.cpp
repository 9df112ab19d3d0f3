#include <vector>
#include <string>

#include "chspindle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chspindle::run_cli(args);
}
