#include "radef/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return radef::run_cli(argc, argv, std::cout, std::cerr); }
