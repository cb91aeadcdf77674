#include "homog/numerics/special.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "homog/error.hpp"

namespace homog::numerics {

double gamma_fn(double x) { return boost::math::tgamma(x); }

double beta_fn(double a, double b) {
    require(a > 0.0 && b > 0.0, "beta_fn: positive arguments");
    return boost::math::beta(a, b);
}

double zeta(double s) {
    require(s != 1.0, "zeta: pole at s = 1");
    return boost::math::zeta(s);
}

double euler_gamma() noexcept { return boost::math::constants::euler<double>(); }

double harmonic(long long n) {
    // Kahan summation from the small terms upward.
    double sum = 0.0, c = 0.0;
    for (long long k = n; k >= 1; --k) {
        const double y = 1.0 / static_cast<double>(k) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace homog::numerics
