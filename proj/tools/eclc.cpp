#include <iostream>

#include "eclc/cli.hpp"

int main(int argc, char** argv) { return eclc::cli::run(argc, argv, std::cout, std::cerr); }
