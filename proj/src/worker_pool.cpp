#include "lsinfer/worker_pool.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace lsinfer {

std::size_t default_worker_count() {
    if (const char* env = std::getenv("LSYS_INFER_THREADS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

WorkerPool::WorkerPool(std::size_t workers) {
    workers = std::max<std::size_t>(workers, 1);
    for (std::size_t i = 1; i < workers; ++i) threads_.emplace_back([this] { run_worker(); });
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) t.join();
}

void WorkerPool::drain() {
    std::unique_lock lock(mutex_);
    while (next_ < total_) {
        const auto i = next_++;
        lock.unlock();
        (*body_)(i);
        lock.lock();
    }
}

void WorkerPool::run_worker() {
    std::size_t seen = 0;
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || epoch_ != seen; });
            if (stop_) return;
            seen = epoch_;
            ++active_;
        }
        drain();
        {
            std::lock_guard lock(mutex_);
            --active_;
        }
        done_.notify_all();
    }
}

void WorkerPool::parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (threads_.empty() || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    {
        std::lock_guard lock(mutex_);
        body_ = &body;
        next_ = 0;
        total_ = n;
        ++epoch_;
    }
    wake_.notify_all();
    drain();
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return active_ == 0 && next_ >= total_; });
    body_ = nullptr;
}

}  // namespace lsinfer
