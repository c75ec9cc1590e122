#include <iostream>

#include "swsh/cli.hpp"

int main(int argc, char** argv) { return swsh::run_cli(argc, argv, std::cout, std::cerr); }
