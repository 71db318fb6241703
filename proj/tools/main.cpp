#include <iostream>

#include "trajsampler/cli.hpp"

int main(int argc, char** argv) { return trajsampler::cli_main(argc, argv, std::cout, std::cerr); }
