#include <iostream>

#include "netbound_cli.hpp"

int main(int argc, char** argv) { return netbound::cli::run(argc, argv, std::cout, std::cerr); }
