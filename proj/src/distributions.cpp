#include "react/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "react/error.hpp"

namespace react::dist {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 20000;

// Lentz continued fraction for the incomplete beta function.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double gamma_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Solves residual(x) = 0 for a residual increasing in x on [lo, hi], using
// Newton steps that fall back to bisection whenever they leave the bracket.
template <class Residual, class Slope>
double invert_monotone(Residual residual, Slope slope, double lo, double hi, double x) {
    x = std::clamp(x, lo, hi);
    for (int iter = 0; iter < 500; ++iter) {
        const double r = residual(x);
        if (r == 0.0) return x;
        if (r < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double s = slope(x);
        double next = (s > 0.0 && std::isfinite(s)) ? x - r / s : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            return next;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi))) {
            return 0.5 * (lo + hi);
        }
        x = next;
    }
    return x;
}

void check_probability(double p) {
    require(p > 0.0 && p < 1.0, ErrorKind::InvalidArgument, "probability must lie in (0,1)");
}

}  // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    check_probability(p);
    // Acklam's rational approximation followed by one Halley step.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int i = 0; i < 2; ++i) {
        // Residual on whichever tail is numerically small.
        const double e = p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - normal_cdf(-x);
        const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x = x - u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double regularized_gamma_p(double a, double x) {
    require(a > 0.0, ErrorKind::InvalidArgument, "gamma shape must be positive");
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    require(a > 0.0, ErrorKind::InvalidArgument, "gamma shape must be positive");
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series(a, x);
    return gamma_continued_fraction(a, x);
}

double regularized_beta(double a, double b, double x, double complement) {
    require(a > 0.0 && b > 0.0, ErrorKind::InvalidArgument, "beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (complement <= 0.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log(complement) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, complement) / b;
}

double regularized_beta(double a, double b, double x) { return regularized_beta(a, b, x, 1.0 - x); }

namespace {

// P(T > t) for t >= 0.
double student_t_upper_tail(double t, double df) {
    const double t2 = t * t;
    const double z = df / (df + t2);
    const double y = t2 / (df + t2);
    return 0.5 * regularized_beta(0.5 * df, 0.5, z, y);
}

}  // namespace

double student_t_cdf(double t, double df) {
    require(df > 0.0, ErrorKind::InvalidArgument, "degrees of freedom must be positive");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    if (t == 0.0) return 0.5;
    const double tail = student_t_upper_tail(std::abs(t), df);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_log_pdf(double t, double df) {
    return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) - 0.5 * std::log(df * std::numbers::pi) -
           0.5 * (df + 1.0) * std::log1p(t * t / df);
}

double student_t_quantile(double p, double df) {
    check_probability(p);
    require(df > 0.0, ErrorKind::InvalidArgument, "degrees of freedom must be positive");
    if (p == 0.5) return 0.0;
    const double tail = p > 0.5 ? 1.0 - p : p;
    double hi = std::max(1.0, 2.0 * std::abs(normal_quantile(tail)));
    while (student_t_upper_tail(hi, df) > tail) hi *= 2.0;
    const double guess = std::min(std::abs(normal_quantile(tail)), hi);
    // Upper-tail probability decreases in t, so the residual tail - S(t) increases.
    const double x = invert_monotone([&](double t) { return tail - student_t_upper_tail(t, df); },
                                     [&](double t) { return std::exp(student_t_log_pdf(t, df)); }, 0.0, hi, guess);
    return p > 0.5 ? x : -x;
}

double chi_squared_cdf(double x, double df) {
    require(df > 0.0, ErrorKind::InvalidArgument, "degrees of freedom must be positive");
    return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi_squared_log_pdf(double x, double df) {
    const double k = 0.5 * df;
    return (k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 - std::lgamma(k);
}

double chi_squared_quantile(double p, double df) {
    check_probability(p);
    require(df > 0.0, ErrorKind::InvalidArgument, "degrees of freedom must be positive");
    // Wilson-Hilferty starting point.
    const double z = normal_quantile(p);
    const double h = 2.0 / (9.0 * df);
    double guess = df * std::pow(std::max(1.0 - h + z * std::sqrt(h), 1e-3), 3);
    double hi = std::max(2.0 * guess, df + 10.0 * std::sqrt(2.0 * df) + 10.0);
    const double k = 0.5 * df;
    auto pdf = [&](double x) { return std::exp(chi_squared_log_pdf(x, df)); };
    if (p <= 0.5) {
        while (regularized_gamma_p(k, 0.5 * hi) < p) hi *= 2.0;
        return invert_monotone([&](double x) { return regularized_gamma_p(k, 0.5 * x) - p; }, pdf, 0.0, hi, guess);
    }
    const double q = 1.0 - p;
    while (regularized_gamma_q(k, 0.5 * hi) > q) hi *= 2.0;
    return invert_monotone([&](double x) { return q - regularized_gamma_q(k, 0.5 * x); }, pdf, 0.0, hi, guess);
}

double beta_log_pdf(double x, double a, double b) {
    if (x <= 0.0 || x >= 1.0) return -std::numeric_limits<double>::infinity();
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b);
}

}  // namespace react::dist
