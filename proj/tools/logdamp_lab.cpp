#include "logdamp/cli.hpp"

int main(int argc, char** argv) { return logdamp::cli_main(argc, argv); }
