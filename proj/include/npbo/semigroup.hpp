#ifndef NPBO_SEMIGROUP_HPP
#define NPBO_SEMIGROUP_HPP

#include <utility>
#include <vector>

#include "npbo/field.hpp"
#include "npbo/report.hpp"

namespace npbo {

struct SymbolParams {
    double mu = 1.0;  // dissipation strength, > 0

    explicit SymbolParams(double mu_) : mu(mu_) {
        if (!(mu > 0.0)) throw std::invalid_argument("SymbolParams: mu must be positive");
    }
    SymbolParams() = default;
};

// linear symbol b_mu(xi) = i xi|xi| + mu(|xi| - |xi|^3)
cplx symbol_eval(double xi, const SymbolParams& p);

// propagator multiplier F_mu(t, xi) = e^{t b_mu(xi)}
cplx propagator(double t, double xi, const SymbolParams& p);

// S(t): forward-only multiplier semigroup
Field semigroup_apply(const Field& phi, double t, const SymbolParams& p);

// sup_{xi>0} xi^lambda e^{a(xi - xi^3)}: brute-force grid plus bisection on
// the stationarity equation; returns (argmax, value)
std::pair<double, double> multiplier_sup(double lambda, double a);

// sup_{xi>=0} <xi>^lambda e^{a(xi - xi^3)} (the H^s -> H^{s+lambda} diagonal
// operator norm of S with a = mu t), same maximization machinery
std::pair<double, double> weighted_multiplier_sup(double lambda, double a);

// max over corpus and t grid of ||S(t)phi||_s / (e^{mu t} ||phi||_s)
EstimateReport growth_bound_check(const std::vector<Field>& corpus, double s,
                                  const std::vector<double>& t_grid,
                                  const SymbolParams& p);

struct PropagatorProbe {
    double s = 0.0;
    double lambda = 0.0;
    std::vector<double> times;
    std::vector<double> measured;   // operator norm per t
    std::vector<double> envelope;   // e^{mu t} + (mu t)^{-lambda/3}
    double fitted_slope = 0.0;      // log-log slope on the smallest decade
    double envelope_constant = 0.0; // max measured/envelope over the grid
    bool pass = false;

    EstimateReport report() const;
};

// small-t smoothing probe: measures the operator norm on a log-spaced t grid
// and fits the blow-up exponent, expected -lambda/3
PropagatorProbe smoothing_probe(double s, double lambda,
                                const std::vector<double>& t_grid,
                                const SymbolParams& p);

// smooth bracket factors of d/dxi F_mu and d^2/dxi^2 F_mu (the Dirac part of
// the second derivative is excluded; xi = 0 is rejected for it)
std::pair<cplx, cplx> propagator_derivative_factors(double t, double xi,
                                                    const SymbolParams& p);

std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace npbo

#endif
