#include "zeno/cli/commands.hpp"

int main(int argc, char** argv) { return zeno::cli::run_cli(argc, argv); }
