#include <iostream>

#include "gridcert/commands.hpp"

int main(int argc, char** argv) { return gridcert::cli::run(argc, argv, std::cout, std::cerr); }
