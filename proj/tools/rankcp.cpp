#include <string>
#include <vector>

#include <rankcp/cli.hpp>

int main(int argc, char** argv) {
    return rankcp::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
