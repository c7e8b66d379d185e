#include <iostream>

#include "kuelsh/cli.hpp"

int main(int argc, char** argv) { return kuelsh::run_cli(argc, argv, std::cout, std::cerr); }
