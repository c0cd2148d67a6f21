#ifndef MAGHOM_PARALLEL_HPP
#define MAGHOM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace maghom {

/// Evaluates f(0), ..., f(count - 1) on up to `jobs` threads and returns the
/// results in index order. The first exception (by index) is rethrown.
template <class F>
auto parallel_map(std::size_t count, std::size_t jobs, F&& f)
{
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t width = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < width; ++t)
            pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace maghom

#endif // MAGHOM_PARALLEL_HPP
