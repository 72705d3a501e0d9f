#include "cli_app.hpp"

int main(int argc, char** argv) { return sigtau::cli::run_cli(argc, argv); }
