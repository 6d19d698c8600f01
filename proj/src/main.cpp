#include "ultracat/cli.hpp"

int main(int argc, char** argv) { return ultracat::run_cli(argc, argv); }
