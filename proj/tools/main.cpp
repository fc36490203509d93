#include <string>
#include <vector>

#include "fibercav/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return fibercav::run_cli(args);
}
