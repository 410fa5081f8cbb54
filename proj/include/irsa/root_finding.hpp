#pragma once

#include <cmath>

#include "irsa/errors.hpp"

namespace irsa {

// Bracketed bisection for the root of func on [lo, hi].
// func(lo) and func(hi) must have opposite signs.
template <class Functor>
double bisect(const Functor& func, double lo, double hi, double x_tol, int max_iters = 200) {
    double flo = func(lo);
    double fhi = func(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw BracketError("bisect: no sign change in the bracket");
    }
    for (int i = 0; i < max_iters; ++i) {
        double mid = 0.5 * (lo + hi);
        double fmid = func(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo < x_tol) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace irsa
