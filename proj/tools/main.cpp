#include "cli.hpp"

int main(int argc, char** argv) { return rangerenew::run_cli(argc, argv); }
