#include <iostream>

#include "mqsym/cli.hpp"

int main(int argc, char** argv) { return mqsym::cli::main_entry(argc, argv, std::cout, std::cerr); }
