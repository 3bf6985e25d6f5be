#include <iostream>

#include "d2dcache/cli.hpp"

int main(int argc, char** argv) { return d2dcache::run_cli(argc, argv, std::cout, std::cerr); }
