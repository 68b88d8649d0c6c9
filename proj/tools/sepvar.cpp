#include "sepvar/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sepvar::cli::run(argc, argv, std::cout, std::cerr); }
