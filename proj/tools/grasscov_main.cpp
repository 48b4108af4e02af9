#include "cli_app.hpp"

int main(int argc, char** argv) { return grasscov::cli::run(argc, argv); }
