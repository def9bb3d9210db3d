#include <iostream>

#include "hacert/cli.hpp"

int main(int argc, char** argv) { return hacert::cli::run(argc, argv, std::cout, std::cerr); }
