#include <string>
#include <vector>

#include "rearr/cli.hpp"

int main(int argc, char** argv) {
  return rearr::run_cli(std::vector<std::string>(argv, argv + argc));
}
