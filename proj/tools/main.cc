#include <iostream>

#include "msing/cli.hpp"

int main(int argc, char** argv) { return msing::run_cli(argc, argv, std::cout, std::cerr); }
