#include "reprmetrics/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return reprmetrics::run_cli(argc, argv, std::cout, std::cerr); }
