#include "hammersley/random.hpp"

#include <cmath>

namespace hammersley {

double RandomStream::exponential(double rate) {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  return -std::log1p(-uniform()) / rate;
}

}  // namespace hammersley
