#include "refresh/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return refresh::runCli(argc, argv, std::cout, std::cerr);
}
