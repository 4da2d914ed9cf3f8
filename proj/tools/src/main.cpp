#include <iostream>

#include "tptpnc/cli.hpp"

int main(int argc, char** argv) { return tptpnc::cli::run(argc, argv, std::cout, std::cerr); }
