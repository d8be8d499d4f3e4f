#include <iostream>

#include "coclass/cli.hpp"

int main(int argc, char** argv) { return coclass::run_cli(argc, argv, std::cout, std::cerr); }
