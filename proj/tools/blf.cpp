#include "blf/cli.hpp"

int main(int argc, char** argv) { return blf::run_cli(argc, argv); }
