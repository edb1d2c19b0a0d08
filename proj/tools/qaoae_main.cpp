#include "qaoae/cli.hpp"

int main(int argc, char** argv) { return qaoae::run_cli(argc, argv); }
