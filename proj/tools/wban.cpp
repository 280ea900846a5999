#include "wban/cli.hpp"

int main(int argc, char** argv) { return wban::cli::run(argc, argv); }
