#include <iostream>

#include "tg/cli.hpp"

int main(int argc, char** argv) { return tg::run(argc, argv, std::cout, std::cerr); }
