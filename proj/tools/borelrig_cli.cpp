#include <iostream>

#include "borelrig/cli.hpp"

int main(int argc, char** argv) { return borelrig::run_cli(argc, argv, std::cout, std::cerr); }
