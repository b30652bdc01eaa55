#include "rosq/cli.hpp"

int main(int argc, char** argv) { return rosq::cli::run(argc, argv); }
