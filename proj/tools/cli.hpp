#pragma once

namespace rangerenew {

// Full command-line front end; returns the process exit code:
// 0 success, 1 gating verification failure, 2 usage error, 3 I/O error.
int run_cli(int argc, char** argv);

} // namespace rangerenew
