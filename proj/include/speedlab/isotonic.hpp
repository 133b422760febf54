#pragma once

#include <cstddef>
#include <vector>

namespace speedlab {

// Least-squares projection onto non-increasing sequences (pool adjacent
// violators). Order preserving: x <= y pointwise implies P x <= P y.
void isotonic_nonincreasing(std::vector<double>& values);

// Applies the projection separately to each residue class i mod stride.
void isotonic_nonincreasing_strided(std::vector<double>& values, std::size_t stride, std::size_t offset = 0);

} // namespace speedlab
