#include "speedlab/isotonic.hpp"

namespace speedlab {

void isotonic_nonincreasing(std::vector<double>& values) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / count; }
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::size_t i = 0;
  for (const Block& b : blocks) {
    const double m = b.mean();
    for (std::size_t n = 0; n < b.count; ++n) values[i++] = m;
  }
}

void isotonic_nonincreasing_strided(std::vector<double>& values, std::size_t stride, std::size_t offset) {
  if (stride <= 1) {
    isotonic_nonincreasing(values);
    return;
  }
  std::vector<double> lane;
  for (std::size_t r = 0; r < stride; ++r) {
    // Nodes i with (offset + i) mod stride == r share a medium phase.
    const std::size_t first = (r + stride - offset % stride) % stride;
    lane.clear();
    for (std::size_t i = first; i < values.size(); i += stride) lane.push_back(values[i]);
    isotonic_nonincreasing(lane);
    std::size_t n = 0;
    for (std::size_t i = first; i < values.size(); i += stride) values[i] = lane[n++];
  }
}

} // namespace speedlab
