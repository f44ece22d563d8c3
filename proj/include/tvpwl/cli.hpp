#pragma once

namespace tvpwl::cli {

/// Entry point of the command-line tool (subcommands: denoise,
/// estimate-gamma, add-noise, benchmark, check). Exit codes: 0 success,
/// 1 I/O failure, 2 solver hit the iteration cap, 64 usage error.
int run(int argc, const char* const* argv);

} // namespace tvpwl::cli
