#include "entadd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return entadd::run_cli(argc, argv, std::cout, std::cerr); }
