#include "cli.hpp"

int main(int argc, char** argv) { return partriemann::cli::main(argc, argv); }
