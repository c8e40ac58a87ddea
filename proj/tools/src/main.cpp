#include <iostream>

#include "onto_cli/run.hpp"

int main(int argc, char** argv) { return onto::cli::run(argc, argv, std::cout, std::cerr); }
