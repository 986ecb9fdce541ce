#include "mgpath/parallel.hpp"

#include <cstdlib>
#include <string>

namespace mgpath {

std::size_t worker_count() {
  std::size_t requested = 0;
  if (const char* env = std::getenv("MGPATH_THREADS")) {
    try {
      requested = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      requested = 0;
    }
  }
  if (requested == 0) requested = std::max(1U, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace mgpath
