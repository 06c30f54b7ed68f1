#include "weylbott/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return weylbott::run_cli(argc, argv, std::cout, std::cerr);
}
