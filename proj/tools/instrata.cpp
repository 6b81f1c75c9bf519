#include "instrata/cli.hpp"

int main(int argc, char** argv) { return instrata::cli::run(argc, argv); }
