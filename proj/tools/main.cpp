#include "qsector/cli.hpp"

int main(int argc, char** argv) { return qsector::cli::run(argc, argv); }
