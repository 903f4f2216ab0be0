#include "hermsim/parallel.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <vector>

namespace hermsim {

namespace {

// Persistent pool, grown lazily to the largest requested width. Jobs are
// whole chunk-ranges; completion is signalled through a shared counter.
class Pool {
  public:
    static Pool& instance() {
        static Pool pool;
        return pool;
    }

    void run(std::uint64_t n_units, int threads, const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
        const int width = std::min<std::uint64_t>(threads, n_units);
        ensure_workers(width - 1);

        struct Job {
            std::uint64_t begin, end;
        };
        std::vector<Job> jobs;
        jobs.reserve(width);
        const std::uint64_t base = n_units / width;
        const std::uint64_t extra = n_units % width;
        std::uint64_t cursor = 0;
        for (int w = 0; w < width; ++w) {
            const std::uint64_t len = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
            jobs.push_back({cursor, cursor + len});
            cursor += len;
        }

        std::atomic<int> remaining{width - 1};
        {
            std::unique_lock lock(mutex_);
            for (int w = 1; w < width; ++w) {
                const Job job = jobs[w];
                queue_.push_back([&fn, job, &remaining, this] {
                    fn(job.begin, job.end);
                    if (remaining.fetch_sub(1) == 1) {
                        std::lock_guard g(mutex_);
                        done_.notify_all();
                    }
                });
            }
            work_.notify_all();
        }

        fn(jobs[0].begin, jobs[0].end); // caller participates

        std::unique_lock lock(mutex_);
        done_.wait(lock, [&] { return remaining.load() == 0; });
    }

  private:
    void ensure_workers(int count) {
        std::lock_guard lock(mutex_);
        while (static_cast<int>(workers_.size()) < count)
            workers_.emplace_back([this] { worker_loop(); });
    }

    void worker_loop() {
        for (;;) {
            std::function<void()> task;
            {
                std::unique_lock lock(mutex_);
                work_.wait(lock, [&] { return stop_ || !queue_.empty(); });
                if (stop_ && queue_.empty())
                    return;
                task = std::move(queue_.back());
                queue_.pop_back();
            }
            task();
        }
    }

    ~Pool() {
        {
            std::lock_guard lock(mutex_);
            stop_ = true;
            work_.notify_all();
        }
        for (auto& t : workers_)
            t.join();
    }

    std::mutex mutex_;
    std::condition_variable work_;
    std::condition_variable done_;
    std::vector<std::function<void()>> queue_;
    std::vector<std::thread> workers_;
    bool stop_ = false;
};

} // namespace

int max_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_ranges(std::uint64_t n_units, int threads,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (n_units == 0)
        return;
    if (threads <= 1 || n_units == 1) {
        fn(0, n_units);
        return;
    }
    Pool::instance().run(n_units, threads, fn);
}

void parallel_for(std::uint64_t n_units, int threads, const std::function<void(std::uint64_t)>& fn) {
    parallel_for_ranges(n_units, threads, [&fn](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t u = begin; u < end; ++u)
            fn(u);
    });
}

} // namespace hermsim
