#ifndef NPBO_SOLVER_HPP
#define NPBO_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "npbo/field.hpp"
#include "npbo/norms.hpp"
#include "npbo/report.hpp"
#include "npbo/semigroup.hpp"

namespace npbo {

// Time-indexed solution snapshots with conserved-quantity monitors.
struct Trajectory {
    TorusGrid grid;
    std::vector<double> times;
    std::vector<Field> fields;

    TrajectoryView view() const { return {&times, &fields}; }
    const Field& at(size_t i) const { return fields[i]; }
    size_t size() const { return times.size(); }

    std::vector<double> l2_series() const;
    std::vector<cplx> mean_series() const;      // \hat u(0, t)
    std::vector<double> moment_series() const;  // int x u dx
};

// int x f dx (real part of the physical moment)
double first_moment(const Field& f);

// u u_x = d_x(u^2)/2, 2/3-rule dealiased; output mean is exactly zero and
// the Nyquist mode is dropped
Field nonlinear_term(const Field& u);

// composite trapezoid of int_0^t S(t - tau) w(tau) dtau over uniformly
// sampled w covering [0, t]
Field duhamel_integral(const std::vector<Field>& w, const std::vector<double>& taus,
                       double t, const SymbolParams& p);

struct PicardConfig {
    double s = 0.0;            // Sobolev index, > -3/2
    double T = 0.5;            // horizon
    int m_time_nodes = 128;    // uniform collocation intervals
    int max_iter = 60;
    double contraction_tol = 1e-12;
    bool dealias = true;       // kept for config echo; nonlinear_term dealiases
    bool nonlinearity_enabled = true;  // test hook

    void validate() const;
};

struct HorizonTooLarge : std::runtime_error {
    double ratio;
    explicit HorizonTooLarge(double r)
        : std::runtime_error("picard_solve: no contraction at this horizon "
                             "(successive-distance ratio " + std::to_string(r) + ")"),
          ratio(r) {}
};

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> iterate_distances;  // d_k between successive iterates
    std::vector<double> distance_ratios;    // d_{k+1}/d_k
    double max_ratio = 0.0;
    double residual = 0.0;                  // ||u - Psi(u)|| at the fixed point
    int iterations = 0;
};

// fixed point of Psi(u) = S(t)phi - 1/2 int_0^t S(t - tau) d_x(u^2) dtau
PicardResult picard_solve(const Field& phi, const PicardConfig& cfg, const SymbolParams& p);

// integrating-factor RK4 on v = e^{-t b_mu} \hat u; the linear part is exact,
// dt is limited only by nonlinear accuracy
Trajectory etd_reference_evolve(const Field& phi, double T, double dt,
                                const SymbolParams& p, int store_every = 1);

// contraction-safe local existence horizon from the calibrated constant
double existence_time(double norm, double s);
double existence_time(double norm, double s, double contraction_constant);

// one-time calibration helper: largest horizon with observed contraction for
// a reference datum, mapped back to the abstract constant
double calibrate_contraction_constant();

// restarted local solves covering [0, T_total] (s >= 0; L2 a priori control)
Trajectory continue_globally(const Field& phi, double T_total, PicardConfig cfg,
                             const SymbolParams& p);

struct EnergyReport {
    std::vector<double> times;
    std::vector<double> norms;       // ||u(t)||
    std::vector<double> bounds;      // e^{mu t} ||phi||
    std::vector<double> identity_residuals;  // centered-FD energy identity
    double max_ratio = 0.0;
    bool pass = false;

    EstimateReport report() const;
};

// checks ||u(t)|| <= e^{mu t} ||phi|| and the differential identity
// d||u||^2/dt = 2 mu int (|xi|-|xi|^3) |u-hat|^2 dxi / 2pi
EnergyReport energy_monitor(const Trajectory& traj, const SymbolParams& p);

// residuals of d/dt int x u dx = ||u||^2 / 2 (centered differences)
std::vector<double> moment_monitor(const Trajectory& traj);

}  // namespace npbo

#endif
