#include <iostream>

#include "corrdyn/cli.hpp"

int main(int argc, char** argv) { return corrdyn::run_cli(argc, argv, std::cout, std::cerr); }
