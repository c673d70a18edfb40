#include "hsann/cli_io.hpp"

int main(int argc, char** argv) { return hsann::run_cli(argc, argv); }
