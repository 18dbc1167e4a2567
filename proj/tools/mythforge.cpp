#include <iostream>

#include "mythforge/commands.hpp"

int main(int argc, char** argv) {
  return mythforge::commands::run(argc, argv, {std::cout, std::cerr});
}
