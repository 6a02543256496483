#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lsinfer {

/// Worker count from LSYS_INFER_THREADS, else the hardware concurrency.
std::size_t default_worker_count();

/// Fixed set of threads running index-parallel loops. The calling thread
/// takes part, so a pool of one runs everything inline.
class WorkerPool {
public:
    explicit WorkerPool(std::size_t workers = default_worker_count());
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    std::size_t size() const noexcept { return threads_.size() + 1; }

    void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

private:
    void run_worker();
    void drain();

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::size_t)>* body_ = nullptr;
    std::size_t next_ = 0;
    std::size_t total_ = 0;
    std::size_t active_ = 0;
    std::size_t epoch_ = 0;
    bool stop_ = false;
};

}  // namespace lsinfer
