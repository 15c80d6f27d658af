#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace maskreg {

/// Fixed set of workers for fork-join loops. The calling thread takes part,
/// so a pool of size 1 runs everything inline.
class ThreadPool
{
public:
    explicit ThreadPool(int workers = 1);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int size() const { return _size; }

    /// Calls fn(index, worker) for every index in [0, n) and returns once all
    /// calls finished. The first exception thrown by any call is rethrown.
    void parallel_for(std::size_t n, const std::function<void(std::size_t, int)>& fn);

private:
    void worker_loop(int worker);
    void run_items(int worker);

    int _size = 1;
    std::vector<std::jthread> _threads;

    std::mutex _mutex;
    std::condition_variable _wake;
    std::condition_variable _done;
    const std::function<void(std::size_t, int)>* _fn = nullptr;
    std::size_t _count = 0;
    std::size_t _next = 0;
    int _busy = 0;
    long _generation = 0;
    bool _stop = false;
    std::exception_ptr _error;
};

} // namespace maskreg
