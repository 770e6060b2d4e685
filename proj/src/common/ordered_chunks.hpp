#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>

namespace noisyatom::detail {

// Runs body(local, i) for i in [0, n) in fixed-size chunks across OpenMP
// threads and folds each chunk into `total` in chunk order. The grouping and
// merge order depend only on n and chunk, never on the thread count.
template <class Acc, class Make, class Body, class Merge>
void ordered_chunks(std::size_t n, std::size_t chunk, Acc& total, Make make, Body body, Merge merge) {
    const auto n_chunks = static_cast<std::ptrdiff_t>((n + chunk - 1) / chunk);
    std::exception_ptr error;

#pragma omp parallel for ordered schedule(static, 1)
    for (std::ptrdiff_t c = 0; c < n_chunks; ++c) {
        Acc local = make();
        const std::size_t lo = static_cast<std::size_t>(c) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        try {
            for (std::size_t i = lo; i < hi; ++i) body(local, i);
        } catch (...) {
#pragma omp critical(noisyatom_ordered_chunks)
            if (!error) error = std::current_exception();
        }
#pragma omp ordered
        merge(total, local);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace noisyatom::detail
