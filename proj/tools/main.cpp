#include <iostream>

#include "cli.hpp"
#include "revivalkit/parallel.hpp"

int main(int argc, char** argv)
{
    revivalkit::parallel::configure_from_environment();
    return revivalkit::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
