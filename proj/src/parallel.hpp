#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace discont::detail {

/// Splits [0, n) into `workers` contiguous chunks and runs fn(chunk, begin, end)
/// for each, chunk 0 on the calling thread. Chunk boundaries depend only on n
/// and workers, so callers can merge per-chunk results in chunk order.
template <typename Fn>
void for_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, unsigned(std::max<std::size_t>(n, 1))));
    const auto bound = [&](std::size_t k) { return n * k / workers; };
    if (workers == 1) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned k = 1; k < workers; ++k) {
            pool.emplace_back([&, k] {
                try {
                    fn(std::size_t{k}, bound(k), bound(k + 1));
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
        try {
            fn(std::size_t{0}, bound(0), bound(1));
        } catch (...) {
            errors[0] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace discont::detail
