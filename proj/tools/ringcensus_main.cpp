#include <iostream>

#include "ringcensus/cli.hpp"

int main(int argc, char** argv) { return ringcensus::run_cli(argc, argv, std::cout, std::cerr); }
