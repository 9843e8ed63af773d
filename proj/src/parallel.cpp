#include "annulus/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace annulus {

namespace {
int g_threads = 0;

int env_threads() {
  const char* s = std::getenv("ANNULUS_LAB_THREADS");
  if (!s) return 1;
  int v = std::atoi(s);
  return v >= 1 ? v : 1;
}
}  // namespace

int thread_count() {
  if (g_threads == 0) g_threads = env_threads();
  return g_threads;
}

void set_thread_count(int n) { g_threads = n >= 1 ? n : 1; }

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  int nt = thread_count();
  if (nt <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  auto body = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
  };
  int spawn = static_cast<int>(std::min<std::size_t>(nt, count));
  workers.reserve(spawn - 1);
  for (int t = 1; t < spawn; ++t) workers.emplace_back(body);
  body();
  for (auto& w : workers) w.join();
}

}  // namespace annulus
