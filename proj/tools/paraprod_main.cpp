#include <iostream>

#include "paraprod/cli.hpp"

int main(int argc, char** argv) { return paraprod::cli::run(argc, argv, std::cout, std::cerr); }
