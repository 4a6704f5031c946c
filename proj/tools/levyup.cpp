#include <iostream>

#include "levyup/cli.hpp"

int main(int argc, char** argv) { return levyup::run_cli(argc, argv, std::cout, std::cerr); }
