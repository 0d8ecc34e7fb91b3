#include "toricfib/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return toricfib::cli::run(argc, argv, std::cout, std::cerr); }
