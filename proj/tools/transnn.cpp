#include "transnn/cli.hpp"

int main(int argc, char** argv) { return transnn::cli::run(argc, argv); }
