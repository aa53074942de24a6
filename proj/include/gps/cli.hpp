#pragma once

namespace gps {

// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O or parse
// error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

int run_cli(int argc, const char* const* argv);

}  // namespace gps
