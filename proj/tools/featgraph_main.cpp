#include "featgraph/cli.hpp"

int main(int argc, char** argv) { return featgraph::cli::run(argc, argv); }
