#include "curvetp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return curvetp::cli::run(argc, argv, std::cout, std::cerr); }
