#include <iostream>

#include "beauville/cli.hpp"

int main(int argc, char** argv) { return beauville::run_cli(argc, argv, std::cout, std::cerr); }
