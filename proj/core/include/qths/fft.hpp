#pragma once

#include <vector>

#include "qths/sector.hpp"

namespace qths {

/// Unnormalized forward transform (sum of e^{-i k.x} samples) over a
/// row-major complex array with the given dimensions.
void fft_forward(std::vector<int> dims, cplx* data);
/// Unnormalized inverse; divide by the total size to invert fft_forward.
void fft_backward(std::vector<int> dims, cplx* data);

} // namespace qths
