#pragma once

namespace rv {

/// Entry point of the rvsim tool. Exit codes: 0 success (run: rendezvous),
/// 2 run ended censored, 1 bad arguments or runtime failure.
int run_cli(int argc, char** argv);

}  // namespace rv
