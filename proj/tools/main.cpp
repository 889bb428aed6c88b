#include <vector>

#include "levelrank/cli.hpp"

int main(int argc, char** argv) {
  return levelrank::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
