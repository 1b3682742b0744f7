#include <iostream>

#include "mlturn/cli.hpp"

int main(int argc, char** argv) {
    return mlturn::run_cli(argc, argv, std::cout, std::cerr);
}
