#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <vector>

namespace rds {

/// Runs `task(i)` for every sample index i in [0, samples) on `workers`
/// threads and returns the results in index order.
///
/// Each worker owns one contiguous block of indices and writes only its own
/// slots, so the returned vector is identical for every worker count as
/// long as `task` is a pure function of its index. Reductions over the
/// result should walk it in index order. The exception from the lowest
/// failing block is rethrown after all workers join.
template <class Task>
auto parallel_ensemble(std::int64_t samples, int workers, Task&& task)
    -> std::vector<std::invoke_result_t<Task&, std::int64_t>>
{
    using Result = std::invoke_result_t<Task&, std::int64_t>;
    // vector<bool> packs slots into shared words.
    static_assert(!std::is_same_v<Result, bool>, "return a struct or integer instead of bool");
    if (samples < 0) {
        throw std::invalid_argument("parallel_ensemble: sample count must be >= 0");
    }
    if (workers < 1) {
        throw std::invalid_argument("parallel_ensemble: worker count must be >= 1");
    }
    std::vector<Result> out(static_cast<std::size_t>(samples));
    const auto n_workers = static_cast<std::int64_t>(std::min<std::int64_t>(workers, std::max<std::int64_t>(samples, 1)));

    auto run_block = [&](std::int64_t w) {
        const std::int64_t begin = samples * w / n_workers;
        const std::int64_t end = samples * (w + 1) / n_workers;
        for (std::int64_t i = begin; i < end; ++i) {
            out[static_cast<std::size_t>(i)] = task(i);
        }
    };

    if (n_workers == 1) {
        run_block(0);
        return out;
    }

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_workers));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (std::int64_t w = 0; w < n_workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                run_block(w);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace rds
