#include <iostream>

#include "mmsim/cli.hpp"

int main(int argc, char** argv) { return mmsim::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
