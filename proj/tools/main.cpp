#include "orlicz/cli.hpp"

int main(int argc, char** argv) { return orlicz::cli_main(argc, argv); }
