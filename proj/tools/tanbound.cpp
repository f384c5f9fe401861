#include "tanbound/cli.hpp"

int main(int argc, char** argv) { return tanbound::cli::run(argc, argv); }
