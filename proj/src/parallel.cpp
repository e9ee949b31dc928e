#include "callias/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace callias {

namespace {
std::atomic<int> g_threads{0};

template <class T>
T pairwise(const T* p, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = p[0];
    for (std::size_t i = 1; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(p, h) + pairwise(p + h, n - h);
}
}  // namespace

void set_thread_count(int n) { g_threads = std::max(0, n); }

int thread_count() {
  int n = g_threads.load();
  if (n > 0) return n;
  if (const char* env = std::getenv("CALLIAS_THREADS")) {
    int e = std::atoi(env);
    if (e > 0) return e;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = count * w / workers, hi = count * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
  return pairwise(v.data(), v.size());
}

}  // namespace callias
