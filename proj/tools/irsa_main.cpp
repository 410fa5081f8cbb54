#include "irsa/runner.hpp"

int main(int argc, char** argv) { return irsa::run_cli(argc, argv); }
