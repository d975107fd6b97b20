#include "modica/config.hpp"

int main(int argc, char** argv) { return modica::run_cli(argc, argv); }
