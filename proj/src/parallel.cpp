#include "cbtau/parallel.hpp"

namespace cbtau {

int hardware_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace cbtau
