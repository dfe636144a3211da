#include "fracscalar/cli.hpp"

int main(int argc, char** argv) { return fracscalar::run_cli(argc, argv); }
