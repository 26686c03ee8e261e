#include "cli.hpp"

int main(int argc, char** argv) { return rv::run_cli(argc, argv); }
