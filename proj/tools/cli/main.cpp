#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return bistab::cli::run(argc, argv, std::cout, std::cerr); }
