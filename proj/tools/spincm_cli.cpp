#include "spincm/scenario.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return spincm::run_command(args);
  } catch (const spincm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return spincm::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spincm::kExitNumerical;
  }
}
