#include "eulerperm/cli.hpp"

int main(int argc, char** argv) { return eulerperm::cli_main(argc, argv); }
