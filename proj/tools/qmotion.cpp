#include <iostream>

#include "qmotion/cli.hpp"

int main(int argc, char** argv)
{
    return qmotion::cli::run(argc, argv, std::cout, std::cerr);
}
