#pragma once

#include <functional>

namespace qrelax {

/// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign,
/// located to `rel_tol` relative width. Throws InternalError when the
/// bracket is invalid or the solver fails to converge.
double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi, double rel_tol = 1e-13);

}  // namespace qrelax
