#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return turinglab::cli::run(argc, argv, std::cout, std::cerr); }
