#include <iostream>

#include "carleman_lab/commands.hpp"

int main(int argc, char** argv) { return clab::app::cli_main(argc, argv, std::cout, std::cerr); }
