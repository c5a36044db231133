// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace bipdo::detail {

/// Unnormalized length-n DFT in natural order. sign = -1 is the forward kernel exp(-2 pi i jk/n).
void dft(const std::complex<double>* in, std::complex<double>* out, int n, int sign);

}  // namespace bipdo::detail
