#include "mahler/parallel.hpp"

#include <cstdlib>
#include <string>

namespace mahler {

unsigned thread_count() {
  static const unsigned cached = [] {
    unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MAHLER_THREADS")) {
      try {
        const long cap = std::stol(env);
        if (cap > 0) hw = static_cast<unsigned>(std::min(cap, 256L));
      } catch (const std::exception&) {
        // Unparseable values leave the hardware default in place.
      }
    }
    return hw;
  }();
  return cached;
}

}  // namespace mahler
