#include "nicf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nicf::run_cli(argc, argv, std::cout, std::cerr); }
