#pragma once

#include <iosfwd>

namespace trajsampler {

/// Entry point of the `trajsampler` tool. Subcommands: bench, sample,
/// exception-split, histogram. Returns 0 on success, 1 on validation or
/// usage errors, 2 on I/O errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trajsampler
