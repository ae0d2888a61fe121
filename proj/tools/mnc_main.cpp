#include "mnc/cli.hpp"

int main(int argc, char** argv) { return mnc::cli_main(argc, argv); }
