#include <iostream>

#include "plcsim/cli.hpp"

int main(int argc, char** argv) {
  using namespace plcsim::cli;
  try {
    const CliInvocation inv = parse_args(argc, argv);
    return run(inv, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "plcsim: " << e.what() << "\nRun 'plcsim --help' for usage.\n";
    return kExitFailure;
  }
}
