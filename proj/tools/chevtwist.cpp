#include <iostream>

#include "chevtwist/cli.hpp"

int main(int argc, char** argv) { return chevtwist::run_cli(argc, argv, std::cout, std::cerr); }
