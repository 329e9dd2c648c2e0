#include "madcap/cli.hpp"

int main(int argc, char **argv) {
  return madcap::run_cli(argc, argv);
}
