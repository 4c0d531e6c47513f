#include <iostream>
#include <string>
#include <vector>

#include "overlap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return overlap::cli::run(args, std::cout, std::cerr);
}
