#include "qrelax/core/roots.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "qrelax/core/errors.hpp"

namespace qrelax {

double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(std::isfinite(flo) && std::isfinite(fhi)) || (flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream os;
        os << "root not bracketed on [" << lo << ", " << hi << "] (f = " << flo << ", " << fhi << ")";
        throw InternalError(os.str());
    }
    const auto done = [rel_tol](double a, double b) {
        return std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b));
    };
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, iterations);
    if (iterations >= 200) throw InternalError("bracketed root search did not converge");
    return 0.5 * (a + b);
}

}  // namespace qrelax
