#include <vector>

#include "fvlab/runner.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fvlab::cli_main(args);
}
