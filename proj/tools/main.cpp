#include "mvjacobi/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mvjacobi::cli::run(argc, argv, std::cout, std::cerr); }
