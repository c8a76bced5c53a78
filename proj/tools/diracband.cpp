#include "diracband/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
    return diracband::cli::run(argc, argv, std::cout, std::cerr);
}
