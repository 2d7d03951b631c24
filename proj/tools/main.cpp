#include "platefsi/cli.hpp"

int main(int argc, char** argv) { return platefsi::cli::run(argc, argv); }
