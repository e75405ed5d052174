#include "cli.hpp"

int main(int argc, char** argv) { return hbareff::cli::run(argc, argv); }
