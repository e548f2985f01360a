#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace ptlab {

enum class Execution { Serial, Parallel };

/// out[i] = f(i) for i in [0, count). Results keep index order whatever the
/// execution mode; the first exception (lowest index) is rethrown.
template <class F>
auto map_indexed(std::size_t count, F&& f, Execution exec = Execution::Parallel)
    -> std::vector<decltype(f(std::size_t{}))> {
    using T = decltype(f(std::size_t{}));
    std::vector<T> out(count);
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(count);
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace ptlab
