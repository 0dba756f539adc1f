#include "stegcost/cli.hpp"

int main(int argc, char** argv) { return stegcost::cli::cli_main(argc, argv); }
