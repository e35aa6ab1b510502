#include "fluxks/cli.hpp"

int main(int argc, char** argv) { return fluxks::run_cli(argc, argv); }
