#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace zeno {

// Splits [0, n) into contiguous blocks and runs body(begin, end) on each,
// one block per hardware thread. Bodies must write disjoint outputs; every
// output is then produced by a fixed serial loop, so results do not depend
// on the thread count.
template <class Body>
void parallel_for_blocks(std::size_t n, Body&& body, std::size_t min_block = 256) {
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t blocks = std::clamp<std::size_t>(n / std::max<std::size_t>(1, min_block), 1, hw);
    if (blocks == 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(blocks);
    workers.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = n * b / blocks;
        const std::size_t hi = n * (b + 1) / blocks;
        workers.emplace_back([&, b, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace zeno
