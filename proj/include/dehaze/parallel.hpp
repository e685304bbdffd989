#pragma once

#include <cstddef>
#include <vector>

namespace dehaze {

// Row-parallel dispatch. Each iteration writes a disjoint slice of the
// output, so the result is identical to the serial loop for any thread count.
template <typename Fn>
void parallel_rows(int rows, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int y = 0; y < rows; ++y) {
        fn(y);
    }
}

// Full-image reduction with a fixed combine order: per-row partial sums are
// computed in parallel, then accumulated serially in row order. The result
// does not depend on the thread count.
template <typename RowSum>
double reduce_rows(int rows, RowSum&& row_sum) {
    std::vector<double> partial(static_cast<std::size_t>(rows > 0 ? rows : 0), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int y = 0; y < rows; ++y) {
        partial[static_cast<std::size_t>(y)] = row_sum(y);
    }
    double total = 0.0;
    for (double v : partial) {
        total += v;
    }
    return total;
}

}  // namespace dehaze
