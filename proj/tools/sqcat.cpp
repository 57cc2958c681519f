#include <iostream>

#include "sqcat/cli.hpp"

int main(int argc, char** argv) { return sqcat::cli::run(argc, argv, std::cout, std::cerr); }
