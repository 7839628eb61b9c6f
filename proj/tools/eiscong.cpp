#include <iostream>

#include "eiscong/cli.hpp"

int main(int argc, char** argv) { return eiscong::cli::run(argc, argv, std::cout, std::cerr); }
