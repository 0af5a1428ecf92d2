#include "cli.hpp"

int main(int argc, char** argv) {
  return fibersim::cli::run(argc, argv);
}
