#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace antopt {

// Runs fn(0..count-1) on up to `threads` workers. Each index must write only
// to its own output slot; with that contract the schedule cannot change the
// result and the sequential path (threads <= 1) is byte-identical.
inline void parallel_for(int count, int threads,
                         const std::function<void(int)>& fn) {
    if (threads > count) threads = count;
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace antopt
