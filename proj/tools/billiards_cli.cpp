#include "billiards/cli.hpp"

int main(int argc, char** argv) { return billiards::cli::run(argc, argv); }
