#include <iostream>

#include "egsr/cli.hpp"

int main(int argc, char** argv) { return egsr::run_cli(argc, argv, std::cout, std::cerr); }
