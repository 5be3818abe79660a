#include "cli.hpp"

int main(int argc, char** argv) { return symrw::cli::run(argc, argv); }
