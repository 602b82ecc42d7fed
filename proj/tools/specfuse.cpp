// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#include <iostream>
#include <string>
#include <vector>

#include "specfuse/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return specfuse::cli::run(args, std::cout, std::cerr);
}
