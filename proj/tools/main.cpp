#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  partspec::cli::RunConfig config;
  if (auto code = partspec::cli::parse_args(argc, argv, config, std::cout, std::cerr)) return *code;
  return partspec::cli::run(config, std::cout, std::cerr);
}
