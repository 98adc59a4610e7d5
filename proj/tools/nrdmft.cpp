#include "nrdmft/cli.hpp"

int main(int argc, char** argv) { return nrdmft::cli::run(argc, argv); }
