#pragma once

namespace qiraa {

/// Worker cap from the QIRAA_THREADS environment variable.
/// Unset, empty, or 0 means "auto" (OpenMP default). Returns 0 for auto.
int thread_cap();

/// Apply the cap process-wide (no-op for auto or non-OpenMP builds).
void apply_thread_cap();

} // namespace qiraa
