#pragma once

namespace kronkit {

// Caps the OpenMP thread count for the parallel kernels; n <= 0 restores
// the runtime default. No-op in a build without OpenMP. The thread count
// never changes any numeric output, only timing.
void set_num_threads(int n);
int max_threads();

} // namespace kronkit
