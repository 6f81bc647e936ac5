#include "groundstate/cli.hpp"

int main(int argc, char** argv) { return groundstate::run_cli(argc, argv); }
