#include "lsi_cli/commands.hpp"

int main(int argc, char** argv) { return lsi::cli::run_cli(argc, argv); }
