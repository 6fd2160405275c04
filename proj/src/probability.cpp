#include "tsecon/probability.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "tsecon/error.hpp"

namespace tsecon {

namespace {

namespace bm = boost::math;

// Domain errors surface as ValidationError instead of boost's default throw/errno mix.
using Policy = bm::policies::policy<bm::policies::domain_error<bm::policies::throw_on_error>,
                                    bm::policies::overflow_error<bm::policies::throw_on_error>>;

void require_positive(double df, const char* what) {
    if (!(df > 0.0) || !std::isfinite(df)) {
        throw ValidationError(std::string("invalid degrees of freedom for ") + what + ": " +
                              std::to_string(df));
    }
}

template <typename F>
double dispatch(const Distribution& d, F&& fn) {
    switch (d.kind()) {
        case Distribution::Kind::normal:
            return fn(bm::normal_distribution<double, Policy>(0.0, 1.0));
        case Distribution::Kind::student_t:
            return fn(bm::students_t_distribution<double, Policy>(d.df1()));
        case Distribution::Kind::f:
            return fn(bm::fisher_f_distribution<double, Policy>(d.df1(), d.df2()));
        case Distribution::Kind::chi_square:
            return fn(bm::chi_squared_distribution<double, Policy>(d.df1()));
    }
    throw ValidationError("unknown distribution kind");
}

bool has_nonnegative_support(const Distribution& d) {
    return d.kind() == Distribution::Kind::f || d.kind() == Distribution::Kind::chi_square;
}

}  // namespace

Distribution Distribution::student_t(double df) {
    require_positive(df, "student_t");
    return Distribution(Kind::student_t, df, 0.0);
}

Distribution Distribution::f(double df1, double df2) {
    require_positive(df1, "f (numerator)");
    require_positive(df2, "f (denominator)");
    return Distribution(Kind::f, df1, df2);
}

Distribution Distribution::chi_square(double df) {
    require_positive(df, "chi_square");
    return Distribution(Kind::chi_square, df, 0.0);
}

double cdf(const Distribution& d, double x) {
    if (std::isnan(x)) throw ValidationError("cdf evaluated at NaN");
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    if (has_nonnegative_support(d) && x <= 0.0) return 0.0;
    return dispatch(d, [x](const auto& dist) { return bm::cdf(dist, x); });
}

double survival(const Distribution& d, double x) {
    if (std::isnan(x)) throw ValidationError("survival evaluated at NaN");
    if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
    if (has_nonnegative_support(d) && x <= 0.0) return 1.0;
    return dispatch(d, [x](const auto& dist) { return bm::cdf(bm::complement(dist, x)); });
}

double quantile(const Distribution& d, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ValidationError("quantile probability must lie in (0, 1), got " + std::to_string(p));
    }
    // Upper-half probabilities go through the complement to keep tail resolution.
    if (p > 0.5) {
        const double q = 1.0 - p;
        return dispatch(d, [q](const auto& dist) { return bm::quantile(bm::complement(dist, q)); });
    }
    return dispatch(d, [p](const auto& dist) { return bm::quantile(dist, p); });
}

double t_pvalue_two_sided(double t, double df) {
    if (std::isnan(t)) return std::nan("");
    const double p = 2.0 * survival(Distribution::student_t(df), std::fabs(t));
    return p > 1.0 ? 1.0 : p;
}

}  // namespace tsecon
