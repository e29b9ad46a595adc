#include <iostream>

#include "mifslab/cli.hpp"

int main(int argc, char** argv) { return mifslab::cli::run(argc, argv, std::cout, std::cerr); }
