#include "npbo/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "npbo/norms.hpp"

namespace npbo {

cplx symbol_eval(double xi, const SymbolParams& p) {
    double a = std::abs(xi);
    return cplx(p.mu * (a - a * a * a), xi * a);
}

cplx propagator(double t, double xi, const SymbolParams& p) {
    return std::exp(t * symbol_eval(xi, p));
}

Field semigroup_apply(const Field& phi, double t, const SymbolParams& p) {
    if (t < 0.0)
        throw std::domain_error("semigroup_apply: the semigroup is forward-only (t >= 0)");
    const TorusGrid& g = phi.grid();
    std::vector<cplx> c(g.n);
    for (int j = 0; j < g.n; ++j) c[j] = propagator(t, g.freq(j), p) * phi.coeff(j);
    // the unpaired Nyquist mode has no conjugate partner; drop it
    c[g.n / 2] = 0.0;
    return Field(g, std::move(c), phi.is_real());
}

namespace {

// maximize obj on (0, cap]: coarse grid, then bisection on the sign of der
std::pair<double, double> maximize(double cap, const std::function<double(double)>& obj,
                                   const std::function<double(double)>& der) {
    const int grid_points = 100000;
    double best_xi = cap, best = obj(cap);
    for (int i = 1; i < grid_points; ++i) {
        double xi = cap * i / grid_points;
        double v = obj(xi);
        if (v > best) { best = v; best_xi = xi; }
    }
    double h = cap / grid_points;
    double lo = std::max(best_xi - h, h * 1e-6), hi = std::min(best_xi + h, cap);
    if (der(lo) > 0.0 && der(hi) < 0.0) {
        while (hi - lo > 1e-12) {
            double mid = 0.5 * (lo + hi);
            (der(mid) > 0.0 ? lo : hi) = mid;
        }
        best_xi = 0.5 * (lo + hi);
        best = std::max(best, obj(best_xi));
    }
    return {best_xi, best};
}

}  // namespace

std::pair<double, double> multiplier_sup(double lambda, double a) {
    if (!(a > 0.0)) throw std::domain_error("multiplier_sup: a must be positive");
    if (lambda < 0.0) throw std::domain_error("multiplier_sup: lambda must be >= 0");
    double cap = std::max(4.0, 2.0 * lambda / a);
    auto obj = [&](double xi) { return std::pow(xi, lambda) * std::exp(a * (xi - xi * xi * xi)); };
    auto der = [&](double xi) { return lambda / xi + a * (1.0 - 3.0 * xi * xi); };
    return maximize(cap, obj, der);
}

std::pair<double, double> weighted_multiplier_sup(double lambda, double a) {
    if (!(a > 0.0)) throw std::domain_error("weighted_multiplier_sup: a must be positive");
    if (lambda < 0.0) throw std::domain_error("weighted_multiplier_sup: lambda must be >= 0");
    double cap = std::max(4.0, 2.0 * lambda / a);
    auto obj = [&](double xi) {
        return std::pow(1.0 + xi * xi, 0.5 * lambda) * std::exp(a * (xi - xi * xi * xi));
    };
    auto der = [&](double xi) { return lambda * xi / (1.0 + xi * xi) + a * (1.0 - 3.0 * xi * xi); };
    auto m = maximize(cap, obj, der);
    double at_zero = obj(1e-300);
    if (at_zero > m.second) return {0.0, at_zero};
    return m;
}

EstimateReport growth_bound_check(const std::vector<Field>& corpus, double s,
                                  const std::vector<double>& t_grid,
                                  const SymbolParams& p) {
    if (corpus.empty()) throw std::invalid_argument("growth_bound_check: empty corpus");
    EstimateReport rep;
    rep.name = "semigroup_growth_bound";
    rep.columns = {"field", "t", "ratio"};
    double worst = 0.0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        double base = sobolev_norm(corpus[i], s);
        if (base == 0.0) {
            rep.notes.push_back("field " + std::to_string(i) + " skipped: zero norm");
            continue;
        }
        for (double t : t_grid) {
            double ratio = sobolev_norm(semigroup_apply(corpus[i], t, p), s) /
                           (std::exp(p.mu * t) * base);
            rep.add_row({(double)i, t, ratio});
            worst = std::max(worst, ratio);
        }
    }
    rep.scalars["max_ratio"] = worst;
    rep.scalars["s"] = s;
    rep.scalars["mu"] = p.mu;
    rep.pass = worst <= 1.0 + 1e-10;
    return rep;
}

PropagatorProbe smoothing_probe(double s, double lambda,
                                const std::vector<double>& t_grid,
                                const SymbolParams& p) {
    if (lambda < 0.0) throw std::domain_error("smoothing_probe: lambda must be >= 0");
    PropagatorProbe probe;
    probe.s = s;
    probe.lambda = lambda;
    probe.times = t_grid;
    double env_c = 0.0;
    for (double t : t_grid) {
        double a = p.mu * t;
        double norm = weighted_multiplier_sup(lambda, a).second;
        double env = std::exp(a) + (lambda > 0.0 ? std::pow(a, -lambda / 3.0) : 1.0);
        probe.measured.push_back(norm);
        probe.envelope.push_back(env);
        env_c = std::max(env_c, norm / env);
    }
    probe.envelope_constant = env_c;

    // fit on the smallest decade of the grid
    double t_min = *std::min_element(t_grid.begin(), t_grid.end());
    std::vector<double> fx, fy;
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] <= 10.0 * t_min) {
            fx.push_back(t_grid[i]);
            fy.push_back(probe.measured[i]);
        }
    }
    probe.fitted_slope = fit_loglog_slope(fx, fy);
    double target = -lambda / 3.0;
    if (lambda == 0.0) {
        probe.pass = std::abs(probe.fitted_slope) < 0.05;
    } else {
        probe.pass = std::abs(probe.fitted_slope - target) <= 0.05 * std::abs(target);
    }
    return probe;
}

EstimateReport PropagatorProbe::report() const {
    EstimateReport rep;
    rep.name = "smoothing_probe";
    rep.columns = {"t", "measured", "envelope"};
    for (size_t i = 0; i < times.size(); ++i)
        rep.add_row({times[i], measured[i], envelope[i]});
    rep.scalars["lambda"] = lambda;
    rep.scalars["s"] = s;
    rep.scalars["fitted_slope"] = fitted_slope;
    rep.scalars["target_slope"] = -lambda / 3.0;
    rep.scalars["envelope_constant"] = envelope_constant;
    rep.pass = pass;
    return rep;
}

std::pair<cplx, cplx> propagator_derivative_factors(double t, double xi,
                                                    const SymbolParams& p) {
    double sgn = (xi > 0.0) - (xi < 0.0);
    double a = std::abs(xi);
    cplx bracket = p.mu * sgn + a * cplx(-3.0 * p.mu * xi, 2.0);
    cplx first = t * bracket;
    if (xi == 0.0)
        throw std::domain_error(
            "propagator_derivative_factors: second factor is distributional at xi = 0");
    cplx second = t * cplx(-6.0 * p.mu * a, 2.0 * sgn) + t * t * bracket * bracket;
    return {first, second};
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out(count);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        out[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
    return out;
}

}  // namespace npbo
