#ifndef SUPERATOM_PARALLEL_HPP
#define SUPERATOM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace superatom {

// Runs fn(0..n-1) on up to `threads` worker threads (<= 0 means all
// hardware threads). Each index writes to its own output slot, so results
// are deterministic regardless of the thread count. The first exception
// thrown by a worker is rethrown on the calling thread.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace superatom

#endif
