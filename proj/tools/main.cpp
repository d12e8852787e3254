#include <string>
#include <vector>

#include "legalkg/cli/cli.hpp"

int main(int argc, char** argv) {
  return legalkg::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
