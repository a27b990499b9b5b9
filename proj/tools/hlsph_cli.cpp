#include "hlsph/cli.hpp"

int main(int argc, char** argv) { return hlsph::cli::run(argc, argv); }
