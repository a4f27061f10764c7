#include <iostream>

#include "ffmeter_cli.hpp"

int main(int argc, char** argv) { return ffm::cli::run(argc, argv, std::cout, std::cerr); }
