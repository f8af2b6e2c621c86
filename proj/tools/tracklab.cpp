#include <string>
#include <vector>

#include "tracklab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tracklab::run_cli(args);
}
