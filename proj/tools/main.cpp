#include "nopave/cli.hpp"

int main(int argc, char** argv) { return nopave::cli::run(argc, argv); }
