#include "af2db/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return af2db::cli::run(argc, argv, std::cout, std::cerr); }
