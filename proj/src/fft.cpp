// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace bipdo::detail {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new arrays is.
std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plans;

fftw_plan plan_for(int n, int sign) {
  std::lock_guard lock(plan_mutex);
  auto it = plans.find({n, sign});
  if (it != plans.end()) return it->second;
  auto* a = fftw_alloc_complex(n);
  auto* b = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(n, a, b, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  plans.emplace(std::make_pair(n, sign), p);
  return p;
}

}  // namespace

void dft(const std::complex<double>* in, std::complex<double>* out, int n, int sign) {
  fftw_plan p = plan_for(n, sign);
  // Plans are out-of-place; in-place requests go through a scratch buffer.
  if (in == out) {
    std::complex<double>* tmp = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
    for (int i = 0; i < n; ++i) tmp[i] = in[i];
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp), reinterpret_cast<fftw_complex*>(out));
    fftw_free(tmp);
    return;
  }
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace bipdo::detail
