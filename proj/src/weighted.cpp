#include "npbo/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "npbo/norms.hpp"

namespace npbo {

Field mean_zero_projector(const Field& phi) {
    std::vector<cplx> c = phi.coeffs();
    c[0] = 0.0;
    return Field(phi.grid(), std::move(c), phi.is_real());
}

namespace {

// weighted L2 with |x|^theta, origin clamped to dx^theta
double frac_weighted_norm(const Field& f, double theta) {
    const TorusGrid& g = f.grid();
    std::vector<cplx> p = f.physical();
    const double dx = g.dx();
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        double ax = std::max(std::abs(g.node(j)), dx);
        acc += std::pow(ax, 2.0 * theta) * std::norm(p[j]);
    }
    return std::sqrt(acc * dx);
}

// weighted mass fraction beyond |x| > L/2
double boundary_fraction(const Field& f, double r) {
    const TorusGrid& g = f.grid();
    std::vector<cplx> p = f.physical();
    double total = 0.0, tail = 0.0;
    for (int j = 0; j < g.n; ++j) {
        double x = g.node(j);
        double v = std::pow(1.0 + x * x, r) * std::norm(p[j]);
        total += v;
        if (std::abs(x) > 0.5 * g.L) tail += v;
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace

PersistenceRun persistence_run(const Field& phi, double s, double r, double T,
                               const SymbolParams& p, double dt) {
    if (!(s >= r && r > 0.0))
        throw std::invalid_argument("persistence_run: need s >= r > 0");
    if (boundary_fraction(phi, r) > 1e-10)
        throw std::runtime_error(
            "persistence_run: datum carries weighted mass near the boundary");
    int steps = std::max(1, (int)std::llround(T / dt));
    Trajectory traj = etd_reference_evolve(phi, T, T / steps, p,
                                           std::max(1, steps / 32));
    PersistenceRun run;
    run.mean_zero_datum = std::abs(phi.mean_coeff()) < 1e-10;
    run.times = traj.times;
    for (size_t i = 0; i < traj.size(); ++i) {
        const Field& u = traj.fields[i];
        // dispersive radiation spreads immediately, so some weighted mass does
        // reach |x| > L/2; it only biases kappa at its own relative size
        double bfrac = boundary_fraction(u, r);
        run.boundary_fraction_max = std::max(run.boundary_fraction_max, bfrac);
        if (bfrac > 1e-2)
            throw std::runtime_error(
                "persistence_run: weighted tail beyond |x| > L/2 exceeds 1% of the norm");
        run.weighted_norms.push_back(weighted_norm(u, r));
        run.sobolev_norms.push_back(sobolev_norm(u, s));
        run.zsr_norms.push_back(zsr_norm(u, s, r));
    }
    double w0 = run.weighted_norms.front();
    run.kappa = 0.0;
    for (double w : run.weighted_norms) run.kappa = std::max(run.kappa, w / w0);
    run.pass = std::isfinite(run.kappa);
    return run;
}

EstimateReport PersistenceRun::report() const {
    EstimateReport rep;
    rep.name = "persistence_run";
    rep.columns = {"t", "weighted", "sobolev", "zsr"};
    for (size_t i = 0; i < times.size(); ++i)
        rep.add_row({times[i], weighted_norms[i], sobolev_norms[i], zsr_norms[i]});
    rep.scalars["kappa"] = kappa;
    rep.scalars["boundary_fraction_max"] = boundary_fraction_max;
    rep.scalars["mean_zero"] = mean_zero_datum ? 1.0 : 0.0;
    rep.pass = pass;
    return rep;
}

double hilbert_weight_ratio(const Field& phi, double theta) {
    if (!(theta > 0.0 && theta < 1.5))
        throw std::domain_error("hilbert_weight_ratio: theta must lie in (0, 3/2)");
    double denom = frac_weighted_norm(phi, theta);
    if (denom == 0.0)
        throw std::invalid_argument("hilbert_weight_ratio: zero weighted norm");
    return frac_weighted_norm(phi.hilbert(), theta) / denom;
}

EstimateReport hilbert_weight_sweep(const std::function<double(double)>& datum,
                                    double theta, const std::vector<double>& Ls,
                                    double dx_target) {
    EstimateReport rep;
    rep.name = "hilbert_weight_sweep";
    rep.columns = {"L", "ratio"};
    std::vector<double> xs, ys;
    for (double L : Ls) {
        int n = 16;
        while (2.0 * L / n > dx_target) n *= 2;
        Field phi = Field::from_function(TorusGrid(L, n), datum);
        double ratio = hilbert_weight_ratio(phi, theta);
        rep.add_row({L, ratio});
        xs.push_back(L);
        ys.push_back(ratio);
    }
    rep.scalars["theta"] = theta;
    rep.scalars["growth_exponent"] = fit_loglog_slope(xs, ys);
    rep.pass = true;  // verdict belongs to the caller's dichotomy threshold
    return rep;
}

EstimateReport jump_divergence_probe(double jump_height,
                                     const std::vector<double>& widths,
                                     const TorusGrid& grid) {
    for (size_t i = 1; i < widths.size(); ++i)
        if (widths[i] >= widths[i - 1])
            throw std::invalid_argument("jump_divergence_probe: widths must decrease");
    EstimateReport rep;
    rep.name = "jump_divergence_probe";
    rep.columns = {"width", "local_mass"};
    std::vector<double> masses;
    for (double w : widths) {
        if (w < 4.0 * grid.dx())
            throw std::invalid_argument("jump_divergence_probe: width below 4*dx unresolved");
        // smoothed step of height h at the origin, decaying envelope so the
        // field lives on the torus
        Field f = Field::from_function(grid, [&](double x) {
            return 0.5 * jump_height * std::tanh(x / w) *
                   std::exp(-std::pow(x / (0.3 * grid.L), 8.0));
        });
        Field d = stein_derivative(f, 0.5);
        std::vector<cplx> dv = d.physical();
        double acc = 0.0;
        for (int j = 0; j < grid.n; ++j)
            if (std::abs(grid.node(j)) < 0.5) acc += std::norm(dv[j]);
        masses.push_back(std::sqrt(acc * grid.dx()));
        rep.add_row({w, masses.back()});
    }
    bool increasing = true;
    for (size_t i = 1; i < masses.size(); ++i)
        if (masses[i] <= masses[i - 1]) increasing = false;
    // a plateau shows up as collapsing increments of the squared mass
    double inc_min = 1e300, inc_max = 0.0;
    for (size_t i = 1; i < masses.size(); ++i) {
        double inc = masses[i] * masses[i] - masses[i - 1] * masses[i - 1];
        inc_min = std::min(inc_min, inc);
        inc_max = std::max(inc_max, inc);
    }
    rep.scalars["h"] = jump_height;
    rep.scalars["increment_min"] = masses.size() > 1 ? inc_min : 0.0;
    rep.scalars["increment_max"] = masses.size() > 1 ? inc_max : 0.0;
    if (jump_height == 0.0) {
        rep.pass = masses.back() < 1e-8;
    } else {
        rep.pass = increasing && inc_min > 0.25 * inc_max;
    }
    return rep;
}

EstimateReport commutator_check(const std::vector<Field>& phis,
                                const std::vector<Field>& fs) {
    if (phis.empty() || fs.empty())
        throw std::invalid_argument("commutator_check: empty corpus");
    auto half_deriv = [](const Field& f) {
        return f.apply_multiplier(
            [](double xi) { return cplx(std::sqrt(std::abs(xi)), 0.0); });
    };
    EstimateReport rep;
    rep.name = "commutator_check";
    rep.columns = {"phi", "f", "ratio"};
    double worst = 0.0;
    for (size_t a = 0; a < phis.size(); ++a) {
        const Field& phi = phis[a];
        std::vector<double> phi_phys = phi.physical_real();
        double denom_phi = sobolev_norm(phi, 1.0);
        for (size_t b = 0; b < fs.size(); ++b) {
            const Field& f = fs[b];
            std::vector<double> f_phys = f.physical_real();
            std::vector<double> prod(phi_phys.size());
            for (size_t j = 0; j < prod.size(); ++j) prod[j] = phi_phys[j] * f_phys[j];
            Field phif = Field::from_samples(phi.grid(), prod);
            Field dhalf_f = half_deriv(f);
            std::vector<double> dhf = dhalf_f.physical_real();
            std::vector<double> prod2(dhf.size());
            for (size_t j = 0; j < prod2.size(); ++j) prod2[j] = phi_phys[j] * dhf[j];
            Field comm = half_deriv(phif) - Field::from_samples(phi.grid(), prod2);
            double ratio = l2_norm(comm) / (denom_phi * l2_norm(f));
            rep.add_row({(double)a, (double)b, ratio});
            worst = std::max(worst, ratio);
        }
    }
    rep.scalars["max_ratio"] = worst;
    rep.pass = std::isfinite(worst);
    return rep;
}

}  // namespace npbo
