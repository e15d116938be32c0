#include "cournot/cli.hpp"

int main(int argc, char** argv) {
  return cournot::cli::run(argc, argv);
}
