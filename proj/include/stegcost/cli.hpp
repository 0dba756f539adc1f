#pragma once

namespace stegcost::cli {

// Entry point for the stegcost command-line tool. Exit codes: 0 success,
// 1 usage or configuration error, 2 runtime error.
int cli_main(int argc, char** argv);

}  // namespace stegcost::cli
