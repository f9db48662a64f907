#include "seqlab/parallel.hpp"

#include <algorithm>

namespace seqlab {

int effective_workers(int requested) {
    int w = requested;
    if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w <= 0) w = 1;
    return std::clamp(w, 1, 64);
}

}  // namespace seqlab
