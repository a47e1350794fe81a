#include "cli_app.hpp"

int main(int argc, char** argv) { return bcrepair::cli::run(argc, argv); }
