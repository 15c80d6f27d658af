#include "maskreg/thread_pool.h"

#include <algorithm>

namespace maskreg {

ThreadPool::ThreadPool(int workers) : _size(std::max(1, workers))
{
    for (int w = 1; w < _size; ++w) {
        _threads.emplace_back([this, w] { worker_loop(w); });
    }
}

ThreadPool::~ThreadPool()
{
    {
        std::lock_guard lock(_mutex);
        _stop = true;
    }
    _wake.notify_all();
}

void ThreadPool::run_items(int worker)
{
    for (;;) {
        std::size_t i;
        {
            std::lock_guard lock(_mutex);
            if (_next >= _count || _error) {
                return;
            }
            i = _next++;
        }
        try {
            (*_fn)(i, worker);
        }
        catch (...) {
            std::lock_guard lock(_mutex);
            if (!_error) {
                _error = std::current_exception();
            }
        }
    }
}

void ThreadPool::worker_loop(int worker)
{
    long seen = 0;
    for (;;) {
        {
            std::unique_lock lock(_mutex);
            _wake.wait(lock, [&] { return _stop || _generation != seen; });
            if (_stop) {
                return;
            }
            seen = _generation;
            ++_busy;
        }
        run_items(worker);
        {
            std::lock_guard lock(_mutex);
            --_busy;
        }
        _done.notify_all();
    }
}

void ThreadPool::parallel_for(std::size_t n, const std::function<void(std::size_t, int)>& fn)
{
    if (n == 0) {
        return;
    }
    if (_size == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i, 0);
        }
        return;
    }
    {
        std::lock_guard lock(_mutex);
        _fn = &fn;
        _count = n;
        _next = 0;
        _error = nullptr;
        ++_generation;
    }
    _wake.notify_all();
    run_items(0);
    std::exception_ptr error;
    {
        std::unique_lock lock(_mutex);
        _done.wait(lock, [&] { return _busy == 0 && (_next >= _count || _error); });
        _fn = nullptr;
        error = _error;
        _error = nullptr;
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace maskreg
