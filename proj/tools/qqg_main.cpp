#include "qqg/cli.hpp"

int main(int argc, char** argv) { return qqg::cli::main_cli(argc, argv); }
