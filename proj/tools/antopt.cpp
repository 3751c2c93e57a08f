#include "antopt/bench.hpp"

int main(int argc, char** argv) { return antopt::run_main(argc, argv); }
