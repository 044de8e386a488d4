#include "npbo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace npbo {

namespace {

// frozen by calibrate_contraction_constant(); see existence_time
constexpr double kContractionC = 0.2345;

std::vector<cplx> propagator_vector(const TorusGrid& g, double t, const SymbolParams& p) {
    std::vector<cplx> e(g.n);
    for (int j = 0; j < g.n; ++j) e[j] = propagator(t, g.freq(j), p);
    e[g.n / 2] = 0.0;
    return e;
}

Field apply_vec(const Field& f, const std::vector<cplx>& m) {
    std::vector<cplx> c(f.size());
    for (int j = 0; j < f.size(); ++j) c[j] = m[j] * f.coeff(j);
    return Field(f.grid(), std::move(c), f.is_real());
}

double iterate_distance(const std::vector<Field>& a, const std::vector<Field>& b,
                        const std::vector<double>& times, double s) {
    double d = 0.0;
    for (size_t i = 1; i < a.size(); ++i) {
        Field diff = a[i] - b[i];
        double v = sobolev_norm(diff, s);
        if (s < 0.0) v += std::pow(times[i], std::abs(s) / 3.0) * l2_norm(diff);
        d = std::max(d, v);
    }
    return d;
}

}  // namespace

std::vector<double> Trajectory::l2_series() const {
    std::vector<double> out;
    out.reserve(fields.size());
    for (const Field& f : fields) out.push_back(l2_norm(f));
    return out;
}

std::vector<cplx> Trajectory::mean_series() const {
    std::vector<cplx> out;
    out.reserve(fields.size());
    for (const Field& f : fields) out.push_back(f.mean_coeff());
    return out;
}

std::vector<double> Trajectory::moment_series() const {
    std::vector<double> out;
    out.reserve(fields.size());
    for (const Field& f : fields) out.push_back(first_moment(f));
    return out;
}

double first_moment(const Field& f) {
    const TorusGrid& g = f.grid();
    std::vector<cplx> p = f.physical();
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) acc += g.node(j) * p[j].real();
    return acc * g.dx();
}

Field nonlinear_term(const Field& u) {
    if (!u.is_real()) throw std::invalid_argument("nonlinear_term: u must be real");
    const TorusGrid& g = u.grid();
    const int cut = g.n / 3;  // 2/3 rule: keep |k| < n/3 so the square is alias-free
    std::vector<cplx> c(g.n, cplx(0.0));
    for (int j = 0; j < g.n; ++j) {
        int k = g.wavenumber(j);
        if (std::abs(k) < cut) c[j] = u.coeff(j);
    }
    Field trunc(g, std::move(c), true);
    std::vector<cplx> phys = trunc.physical();
    std::vector<double> sq(g.n);
    for (int j = 0; j < g.n; ++j) sq[j] = phys[j].real() * phys[j].real();
    Field w = Field::from_samples(g, sq);
    std::vector<cplx> out(g.n, cplx(0.0));
    for (int j = 0; j < g.n; ++j) {
        int k = g.wavenumber(j);
        if (std::abs(k) < cut)
            out[j] = cplx(0.0, 0.5 * g.freq(j)) * w.coeff(j);
    }
    return Field(g, std::move(out), true);
}

Field duhamel_integral(const std::vector<Field>& w, const std::vector<double>& taus,
                       double t, const SymbolParams& p) {
    if (w.size() != taus.size() || w.size() < 2)
        throw std::invalid_argument("duhamel_integral: need matching samples, >= 2");
    const double eps = 1e-12 * std::max(1.0, t);
    if (t > taus.back() + eps)
        throw std::domain_error("duhamel_integral: t beyond the sampled range");
    size_t last = taus.size() - 1;
    while (last > 0 && taus[last] > t + eps) --last;
    if (std::abs(taus[last] - t) > eps)
        throw std::domain_error("duhamel_integral: t is not a collocation time");
    double dt = taus[1] - taus[0];
    Field acc = Field::zero(w[0].grid());
    for (size_t i = 0; i <= last; ++i) {
        double weight = (i == 0 || i == last) ? 0.5 * dt : dt;
        acc += weight * semigroup_apply(w[i], t - taus[i], p);
    }
    return acc;
}

void PicardConfig::validate() const {
    if (!(s > -1.5)) throw std::domain_error("PicardConfig: s must exceed -3/2");
    if (!(T > 0.0)) throw std::invalid_argument("PicardConfig: T must be positive");
    if (s < 0.0 && T > std::min(1.0, 4.5 * std::abs(s)) + 1e-12)
        throw std::invalid_argument("PicardConfig: T exceeds min{1, 9|s|/2} for s < 0");
    if (m_time_nodes < 2) throw std::invalid_argument("PicardConfig: need >= 2 time nodes");
}

PicardResult picard_solve(const Field& phi, const PicardConfig& cfg, const SymbolParams& p) {
    cfg.validate();
    const TorusGrid& g = phi.grid();
    const int m = cfg.m_time_nodes;
    const double dt = cfg.T / m;

    std::vector<double> times(m + 1);
    for (int i = 0; i <= m; ++i) times[i] = i * dt;

    std::vector<cplx> E = propagator_vector(g, dt, p);

    // linear flow at the collocation times
    std::vector<Field> lin;
    lin.reserve(m + 1);
    lin.push_back(phi);
    for (int i = 1; i <= m; ++i) lin.push_back(apply_vec(lin.back(), E));

    std::vector<Field> u = lin;
    PicardResult res;
    int bad_streak = 0;
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        std::vector<Field> next;
        next.reserve(m + 1);
        next.push_back(phi);
        if (cfg.nonlinearity_enabled) {
            std::vector<Field> gterm;
            gterm.reserve(m + 1);
            for (int i = 0; i <= m; ++i) gterm.push_back(-1.0 * nonlinear_term(u[i]));
            // trapezoid Duhamel accumulated recursively:
            // I_i = E I_{i-1} + dt/2 (E g_{i-1} + g_i)
            Field I = Field::zero(g);
            for (int i = 1; i <= m; ++i) {
                I = apply_vec(I, E) + (0.5 * dt) * (apply_vec(gterm[i - 1], E) + gterm[i]);
                next.push_back(lin[i] + I);
            }
        } else {
            for (int i = 1; i <= m; ++i) next.push_back(lin[i]);
        }
        double d = iterate_distance(next, u, times, cfg.s);
        if (!std::isfinite(d)) throw HorizonTooLarge(d);
        res.iterations = iter + 1;
        if (!res.iterate_distances.empty()) {
            double ratio = d / res.iterate_distances.back();
            res.distance_ratios.push_back(ratio);
            res.max_ratio = std::max(res.max_ratio, ratio);
            bad_streak = ratio >= 1.0 ? bad_streak + 1 : 0;
            if (bad_streak >= 3) throw HorizonTooLarge(ratio);
        }
        res.iterate_distances.push_back(d);
        u = std::move(next);
        double scale = 0.0;
        for (int i = 0; i <= m; ++i) scale = std::max(scale, sobolev_norm(u[i], cfg.s));
        if (d <= cfg.contraction_tol * std::max(1.0, scale)) {
            res.residual = d;
            break;
        }
        if (iter == cfg.max_iter - 1)
            throw HorizonTooLarge(res.distance_ratios.empty() ? 1.0
                                                              : res.distance_ratios.back());
    }
    res.trajectory.grid = g;
    res.trajectory.times = std::move(times);
    res.trajectory.fields = std::move(u);
    return res;
}

Trajectory etd_reference_evolve(const Field& phi, double T, double dt,
                                const SymbolParams& p, int store_every) {
    if (!(T > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("etd_reference_evolve: T and dt must be positive");
    const TorusGrid& g = phi.grid();
    const int steps = (int)std::llround(T / dt);
    if (std::abs(steps * dt - T) > 1e-9 * std::max(1.0, T))
        throw std::invalid_argument("etd_reference_evolve: T must be a multiple of dt");
    std::vector<cplx> E = propagator_vector(g, dt, p);
    std::vector<cplx> Eh = propagator_vector(g, 0.5 * dt, p);

    auto rhs = [](const Field& u) { return -1.0 * nonlinear_term(u); };

    Trajectory traj;
    traj.grid = g;
    traj.times.push_back(0.0);
    traj.fields.push_back(phi);

    Field u = phi;
    for (int n = 1; n <= steps; ++n) {
        // integrating-factor RK4; the propagators appear forward-only
        Field Ehu = apply_vec(u, Eh);
        Field Eu = apply_vec(u, E);
        Field k1 = rhs(u);
        Field k2 = rhs(Ehu + (0.5 * dt) * apply_vec(k1, Eh));
        Field k3 = rhs(Ehu + (0.5 * dt) * k2);
        Field k4 = rhs(Eu + dt * apply_vec(k3, Eh));
        u = Eu + (dt / 6.0) *
                     (apply_vec(k1, E) + 2.0 * (apply_vec(k2, Eh) + apply_vec(k3, Eh)) + k4);
        if (!std::isfinite(u.coeff(0).real()) || !std::isfinite(l2_norm(u)))
            throw std::runtime_error("etd_reference_evolve: instability at step " +
                                     std::to_string(n));
        if (n % store_every == 0 || n == steps) {
            traj.times.push_back(n * dt);
            traj.fields.push_back(u);
        }
    }
    return traj;
}

double existence_time(double norm, double s, double C) {
    if (!(s > -1.5)) throw std::domain_error("existence_time: s must exceed -3/2");
    if (!(norm > 0.0)) throw std::invalid_argument("existence_time: norm must be positive");
    double cap = s < 0.0 ? std::min(1.0, 4.5 * std::abs(s)) : 1.0;
    double raw;
    if (s > 0.5) {
        raw = std::pow(4.0 * C * C * norm, -1.5);
    } else if (s >= 0.0) {
        raw = std::pow(8.0 * C * C * norm, 6.0 / (2.0 * s - 3.0));
    } else {
        double gs = (3.0 + 2.0 * s) / 6.0;
        raw = std::pow(8.0 * C * C * norm, -1.0 / gs);
    }
    return std::min(cap, 0.5 * raw);  // x0.5 safety on the calibrated branch
}

double existence_time(double norm, double s) {
    return existence_time(norm, s, kContractionC);
}

double calibrate_contraction_constant() {
    TorusGrid g(64.0, 512);
    Field phi = Field::from_function(g, [](double x) { return std::exp(-x * x); });
    SymbolParams p(1.0);
    double nu = sobolev_norm(phi, 1.0);
    auto contracts = [&](double T) {
        PicardConfig cfg;
        cfg.s = 1.0;
        cfg.T = T;
        cfg.m_time_nodes = 96;
        try {
            PicardResult r = picard_solve(phi, cfg, p);
            return r.max_ratio < 1.0;
        } catch (const HorizonTooLarge&) {
            return false;
        }
    };
    double lo = 0.01, hi = 1.0;
    if (!contracts(lo)) throw std::runtime_error("calibration: no contraction at T = 0.01");
    while (contracts(hi) && hi < 64.0) hi *= 2.0;
    for (int i = 0; i < 24; ++i) {
        double mid = 0.5 * (lo + hi);
        (contracts(mid) ? lo : hi) = mid;
    }
    double t_max = lo;
    // invert the s > 1/2 horizon formula T = (4 C^2 nu)^{-3/2}
    return std::sqrt(std::pow(t_max, -2.0 / 3.0) / (4.0 * nu));
}

Trajectory continue_globally(const Field& phi, double T_total, PicardConfig cfg,
                             const SymbolParams& p) {
    if (cfg.s < 0.0)
        throw std::domain_error("continue_globally: restart argument needs s >= 0");
    Trajectory traj;
    traj.grid = phi.grid();
    traj.times.push_back(0.0);
    traj.fields.push_back(phi);

    double t_cur = 0.0;
    Field u = phi;
    while (t_cur < T_total - 1e-12) {
        double step = 0.9 * existence_time(std::max(l2_norm(u), 1e-12), 0.0);
        step = std::min(step, T_total - t_cur);
        for (;;) {
            if (step < 1e-6)
                throw std::runtime_error(
                    "continue_globally: local step rejected down to minimum size");
            cfg.T = step;
            try {
                PicardResult r = picard_solve(u, cfg, p);
                for (size_t i = 1; i < r.trajectory.size(); ++i) {
                    traj.times.push_back(t_cur + r.trajectory.times[i]);
                    traj.fields.push_back(r.trajectory.fields[i]);
                }
                u = traj.fields.back();
                t_cur += step;
                break;
            } catch (const HorizonTooLarge&) {
                step *= 0.5;
            }
        }
    }
    return traj;
}

EnergyReport energy_monitor(const Trajectory& traj, const SymbolParams& p) {
    if (traj.size() < 3)
        throw std::invalid_argument("energy_monitor: need >= 3 times");
    EnergyReport rep;
    rep.times = traj.times;
    rep.norms = traj.l2_series();
    double phi_norm = rep.norms.front();
    for (double t : traj.times) rep.bounds.push_back(std::exp(p.mu * t) * phi_norm);
    rep.max_ratio = 0.0;
    for (size_t i = 0; i < rep.norms.size(); ++i)
        rep.max_ratio = std::max(rep.max_ratio, rep.norms[i] / rep.bounds[i]);

    // dissipation functional mu (1/2pi) int (|xi|-|xi|^3) |u-hat|^2 dxi
    auto dissipation = [&](const Field& f) {
        const TorusGrid& g = f.grid();
        double acc = 0.0;
        for (int j = 0; j < g.n; ++j) {
            double a = std::abs(g.freq(j));
            acc += (a - a * a * a) * std::norm(f.coeff(j));
        }
        return p.mu * acc * g.dxi() / (2.0 * M_PI);
    };
    rep.identity_residuals.assign(traj.size(), 0.0);
    for (size_t i = 1; i + 1 < traj.size(); ++i) {
        double fd = (0.5 * rep.norms[i + 1] * rep.norms[i + 1] -
                     0.5 * rep.norms[i - 1] * rep.norms[i - 1]) /
                    (traj.times[i + 1] - traj.times[i - 1]);
        rep.identity_residuals[i] = std::abs(fd - dissipation(traj.fields[i]));
    }
    rep.pass = rep.max_ratio <= 1.0 + 1e-8;
    return rep;
}

EstimateReport EnergyReport::report() const {
    EstimateReport rep;
    rep.name = "energy_monitor";
    rep.columns = {"t", "l2", "bound", "identity_residual"};
    for (size_t i = 0; i < times.size(); ++i)
        rep.add_row({times[i], norms[i], bounds[i], identity_residuals[i]});
    rep.scalars["max_ratio"] = max_ratio;
    rep.pass = pass;
    return rep;
}

std::vector<double> moment_monitor(const Trajectory& traj) {
    std::vector<double> res(traj.size(), 0.0);
    std::vector<double> mom = traj.moment_series();
    std::vector<double> l2 = traj.l2_series();
    for (size_t i = 1; i + 1 < traj.size(); ++i) {
        double fd = (mom[i + 1] - mom[i - 1]) / (traj.times[i + 1] - traj.times[i - 1]);
        res[i] = std::abs(fd - 0.5 * l2[i] * l2[i]);
    }
    return res;
}

}  // namespace npbo
