#pragma once

#include <cstddef>

namespace kronkit {

struct MatvecBenchResult {
    double explicit_median_s;   // materialize kron(b, c), then multiply
    double structured_median_s; // kron_matvec
    double speedup;             // explicit / structured
    double max_abs_diff;        // between the two result vectors
};

// Times kron(b,c)*x computed two ways on deterministic pseudo-random
// inputs of the given factor sizes; medians over `reps` repetitions.
MatvecBenchResult bench_matvec(std::size_t m, std::size_t n, std::size_t p,
                               std::size_t q, std::size_t reps);

} // namespace kronkit
