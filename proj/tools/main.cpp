#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bundle_forge::cli::run(argc, argv, std::cout, std::cerr); }
