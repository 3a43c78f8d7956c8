#include "isomatch/parallel.hpp"

namespace isomatch {

namespace {
std::atomic<std::size_t> g_workers{0};
}

std::size_t default_workers() {
  std::size_t w = g_workers.load();
  if (w != 0) return w;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_default_workers(std::size_t workers) { g_workers.store(workers); }

}  // namespace isomatch
