#include "cli.hpp"

int main(int argc, char** argv) { return ecofollow::cli::run(argc, argv); }
