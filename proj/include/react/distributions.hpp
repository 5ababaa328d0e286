#pragma once

// Distribution functions needed by the region constructors. Quantiles are
// obtained by safeguarded Newton iteration on the regularized incomplete
// gamma and beta functions.

namespace react::dist {

double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b). `complement` must equal 1 - x; it is
// passed separately so callers can supply it without cancellation.
double regularized_beta(double a, double b, double x, double complement);
double regularized_beta(double a, double b, double x);

double student_t_cdf(double t, double df);
double student_t_log_pdf(double t, double df);
double student_t_quantile(double p, double df);

double chi_squared_cdf(double x, double df);
double chi_squared_log_pdf(double x, double df);
double chi_squared_quantile(double p, double df);

double beta_log_pdf(double x, double a, double b);

}  // namespace react::dist
