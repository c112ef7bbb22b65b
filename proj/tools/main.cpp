#include <cstdio>
#include <string>
#include <vector>

#include "valinf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const valinf::cli::CliResult result = valinf::cli::run_cli(args);
    if (!result.output.empty())
        std::fputs(result.output.c_str(), stdout);
    if (!result.error.empty())
        std::fprintf(stderr, "error: %s\n", result.error.c_str());
    return result.exit_code;
}
