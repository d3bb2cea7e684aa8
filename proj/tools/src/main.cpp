#include <iostream>

#include "epsqp/cli/app.hpp"

int main(int argc, char** argv) { return epsqp::cli::run(argc, argv, std::cout, std::cerr); }
