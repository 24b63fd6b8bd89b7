#pragma once

#include <complex>

namespace ekss::detail {

// Unnormalized r2c transform of an n^3 real array (x fastest).
void r2c(int n, const double* in, std::complex<double>* out);
// Unnormalized c2r transform; `in` is overwritten.
void c2r(int n, std::complex<double>* in, double* out);

}  // namespace ekss::detail
