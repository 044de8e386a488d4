#ifndef NPBO_WEIGHTED_HPP
#define NPBO_WEIGHTED_HPP

#include <functional>
#include <vector>

#include "npbo/field.hpp"
#include "npbo/report.hpp"
#include "npbo/solver.hpp"

namespace npbo {

// projection onto mean-zero data (zeroes \hat f(0)); idempotent
Field mean_zero_projector(const Field& phi);

struct PersistenceRun {
    std::vector<double> times;
    std::vector<double> weighted_norms;   // ||<x>^r u(t)||
    std::vector<double> sobolev_norms;    // ||u(t)||_s
    std::vector<double> zsr_norms;
    double kappa = 0.0;                   // sup_t weighted / weighted(0)
    double boundary_fraction_max = 0.0;   // worst weighted-mass fraction at |x| > L/2
    bool mean_zero_datum = false;
    bool pass = false;

    EstimateReport report() const;
};

// evolves phi and tracks the Z_{s,r} ladder; rejects data already parked near
// the boundary and runs whose dispersive radiation past |x| > L/2 grows large
// enough to contaminate the weighted norms through wrap-around
PersistenceRun persistence_run(const Field& phi, double s, double r, double T,
                               const SymbolParams& p, double dt = 1e-3);

// ||x|^theta H(phi)|| / ||x|^theta phi|| on the field's own grid
double hilbert_weight_ratio(const Field& phi, double theta);

// L-growth exponent of the ratio for an analytic datum resolved at fixed dx:
// bounded for mean-zero data, ~sqrt(L) growth otherwise
EstimateReport hilbert_weight_sweep(const std::function<double(double)>& datum,
                                    double theta, const std::vector<double>& Ls,
                                    double dx_target = 1.0 / 16.0);

// local D^{1/2} mass near a smoothed jump under width halving; a genuine jump
// drives the mass up without plateau
EstimateReport jump_divergence_probe(double jump_height,
                                     const std::vector<double>& widths,
                                     const TorusGrid& grid);

// max over corpus pairs of ||[D^{1/2}, phi] f|| / (||phi||_1 ||f||)
EstimateReport commutator_check(const std::vector<Field>& phis,
                                const std::vector<Field>& fs);

}  // namespace npbo

#endif
