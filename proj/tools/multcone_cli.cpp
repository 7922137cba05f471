#include <iostream>

#include "multcone/root_system.hpp"

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::cerr << "multcone: CLI not wired up yet\n";
  return 2;
}
