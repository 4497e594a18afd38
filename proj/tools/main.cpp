#include <iostream>

#include "scmt/cli/app.hpp"

int main(int argc, char** argv) { return scmt::cli::run_cli(argc, argv, std::cout, std::cerr); }
