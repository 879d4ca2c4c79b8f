#include "fem/cli.hpp"

int main(int argc, char** argv) { return fem::cli_main(argc, argv); }
