#pragma once

namespace valord {

/// Execution policy for the enumeration kernels. The serial path is the
/// reference implementation; the parallel path must produce identical
/// output and is checked against it in the tests.
enum class ExecPolicy { serial, parallel };

/// Number of workers the parallel policy will use (1 without OpenMP).
unsigned worker_count();

}  // namespace valord
