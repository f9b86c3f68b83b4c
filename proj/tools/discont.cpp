#include "discont/cli.hpp"

int main(int argc, char** argv) { return discont::cli::main_entry(argc, argv); }
