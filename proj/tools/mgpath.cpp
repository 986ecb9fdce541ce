#include <iostream>

#include "mgpath/cli.hpp"

int main(int argc, char** argv) { return mgpath::cli::run(argc, argv, std::cout, std::cerr); }
