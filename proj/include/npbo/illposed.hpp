#ifndef NPBO_ILLPOSED_HPP
#define NPBO_ILLPOSED_HPP

#include <array>
#include <vector>

#include "npbo/field.hpp"
#include "npbo/report.hpp"

namespace npbo {

// Box-spectrum datum experiment: phi-hat = N^{-s} gamma^{-1/2} (1_I + 1_{-I}),
// I = [N, N+2*gamma], and the closed-form second Picard iterate on the
// low-frequency band (-2*gamma, 2*gamma).
struct InflationConfig {
    double N = 64.0;      // box center frequency, >> gamma
    double gamma = 1.0;   // box half-structure width
    double s = -2.0;      // Sobolev index
    double mu = 1.0;
    int n_t = 40;         // log-spaced times spanning [1e-2, 1e2] * N^{-3}
    int n_quad = 256;     // midpoint nodes per K_xi component
    int n_xi = 129;       // output frequencies inside (-2*gamma, 2*gamma)

    void validate() const;
    std::vector<double> time_grid() const;
};

// resonance functions of the symbol mismatch b(xi-xi1) + b(xi1) - b(xi)
double resonance_chi(double xi, double xi1, double mu);
double resonance_psi(double xi, double xi1);

struct Interval {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
};

// K_xi = {xi1 in I : xi - xi1 in -I} U {xi1 in -I : xi - xi1 in I};
// total measure 2(2*gamma - |xi|) for |xi| < 2*gamma
std::array<Interval, 2> kxi_intervals(double xi, double N, double gamma);

// (e^{t z} - 1)/z with the removable singularity closed as t
cplx duhamel_time_factor(cplx z, double t);

Field build_box_datum(const InflationConfig& cfg, const TorusGrid& grid);
// ||phi||_s of the box datum by direct integration over the boxes
double box_datum_norm(const InflationConfig& cfg);

struct SecondIterate {
    std::vector<double> xi;
    std::vector<cplx> values;

    // H^s norm restricted to the sampled band (trapezoid in xi)
    double restricted_norm(double s) const;
};

SecondIterate second_iterate_spectrum(const InflationConfig& cfg, double t);

// sup_t restricted norm per N, log-log slope vs N; expected -2s-3 for
// s < -3/2, bounded for the well-posed control range
EstimateReport inflation_sweep(const std::vector<double>& Ns, double s,
                               double gamma, double mu);

}  // namespace npbo

#endif
