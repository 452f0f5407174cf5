#include "hexlat/io.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>

namespace hexlat {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() {
  int n = g_threads.load();
  if (n > 0) return n;
  if (const char* env = std::getenv("HEXLAT_THREADS")) {
    int e = std::atoi(env);
    if (e > 0) return e;
  }
  return 1;
}

void set_thread_count(int n) { g_threads.store(n); }

}  // namespace hexlat
