#include "parallel.hpp"

#include <cstdlib>
#include <string>

namespace rgg {

namespace {
std::atomic<int> g_threads{0};

int env_cap() {
    static const int cap = [] {
        if (const char* s = std::getenv("RGG_THREADS")) {
            try {
                const int v = std::stoi(s);
                if (v > 0) return v;
            } catch (...) {
            }
        }
        return 0;
    }();
    return cap;
}
}  // namespace

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

int thread_count() {
    const int forced = g_threads.load();
    if (forced > 0) return forced;
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const int cap = env_cap(); cap > 0 && cap < n) n = cap;
    return n;
}

}  // namespace rgg
