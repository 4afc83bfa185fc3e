#include <iostream>
#include <string>
#include <vector>

#include "folio/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return folio::cli::run(args, std::cin, std::cout, std::cerr);
}
