#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace psp {

/// Run fn(i) for i in [0, count) split over hardware threads.  Used for the
/// independent fiber applications of the 2-D operators; fn must not touch
/// shared mutable state outside its own index range.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int workers = std::max(1, std::min(hw, count));
    if (workers <= 1 || count < 4) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &fn] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace psp
