// SPDX-License-Identifier: Apache-2.0
#include "mamimo/cli.hpp"

int main(int argc, char** argv) { return mamimo::run_cli(argc, argv); }
