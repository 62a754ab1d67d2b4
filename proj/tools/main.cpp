#include "cli.hpp"

int main(int argc, char** argv) { return geofat::cli::run(argc, argv); }
