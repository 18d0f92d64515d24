#include <iostream>

#include "oddkh/cli.hpp"

int main(int argc, char** argv) { return oddkh::run_cli(argc, argv, std::cout, std::cerr); }
