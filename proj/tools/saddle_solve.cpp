#include <iostream>

#include "saddle/cli.hpp"

int main(int argc, char** argv) { return saddle::run_cli(argc, argv, std::cout, std::cerr); }
