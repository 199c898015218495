#include <iostream>

#include "margulis/cli.hpp"

int main(int argc, char** argv) { return margulis::cli::run(argc, argv, std::cout, std::cerr); }
