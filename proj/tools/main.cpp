#include "tvpwl/cli.hpp"

int main(int argc, char** argv)
{
    return tvpwl::cli::run(argc, argv);
}
