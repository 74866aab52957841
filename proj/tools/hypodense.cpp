#include "hypodense/cli.hpp"

int main(int argc, char** argv) { return hypodense::cli_main(argc, argv); }
