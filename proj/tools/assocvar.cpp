#include <iostream>

#include "assocvar/cli.hpp"

int main(int argc, char** argv) { return assocvar::run_cli(argc, argv, std::cout, std::cerr); }
