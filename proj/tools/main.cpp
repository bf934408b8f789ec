#include "cli.hpp"

int main(int argc, char** argv) { return mine::cli::main_entry(argc, argv); }
