#include "permword/cli.hpp"

int main(int argc, char** argv)
{
    return permword::cli::dispatch(argc, argv);
}
