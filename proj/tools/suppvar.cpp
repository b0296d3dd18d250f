#include <iostream>

#include "suppvar/cli.hpp"

int main(int argc, char** argv) { return suppvar::run_cli(argc, argv, std::cout, std::cerr); }
