#include "spurious/cli.hpp"

int main(int argc, char** argv) { return spurious::cli_dispatch(argc, argv); }
