#pragma once
#include <vector>

#include "hv/util.hpp"

namespace hv {

// in-place radix-2 FFT, v.size() a power of two.
// sign=+1 computes X_m = sum_k v_k e^{+2pi i km/M} (no 1/M factor),
// sign=-1 the conjugate transform.
void fft_pow2(std::vector<cplx>& v, int sign);

} // namespace hv
