#include "uq2/cli.hpp"

int main(int argc, char** argv) { return uq2::run(argc, argv); }
