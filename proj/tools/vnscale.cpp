#include "vnscale/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return vnscale::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
