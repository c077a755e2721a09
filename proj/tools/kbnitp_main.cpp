#include "kbnitp/cli.hpp"

int main(int argc, char** argv) { return kbnitp::cli::run_cli(argc, argv); }
