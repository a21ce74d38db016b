#include <iostream>
#include <vector>

#include "dmspin/cli.hpp"

int main(int argc, char** argv) {
    return dmspin::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                            std::cerr);
}
