#include "vcc/cli.hpp"

int main(int argc, char** argv) { return vcc::run_cli(argc, argv); }
