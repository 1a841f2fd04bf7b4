#include <iostream>

#include "ngstrat/cli.hpp"

int main(int argc, char** argv) { return ngstrat::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
