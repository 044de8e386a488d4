#ifndef NPBO_NORMS_HPP
#define NPBO_NORMS_HPP

#include <vector>

#include "npbo/field.hpp"

namespace npbo {

// All norms are continuum-calibrated Riemann sums so values converge to the
// corresponding R-norms under refinement.

// ||f||_s = ((1/2pi) sum <xi>^{2s} |c_k|^2 dxi)^{1/2}
double sobolev_norm(const Field& f, double s);
double l2_norm(const Field& f);  // sobolev_norm(f, 0)

// physical-side L2 with weight <x>^{2r} (inhomogeneous) or |x|^{2r}
// (homogeneous; |x| < dx is clamped to dx for fractional weights)
double weighted_norm(const Field& f, double r);
double homogeneous_weighted_norm(const Field& f, double r);

// Z_{s,r} combined norm: (sobolev^2 + weighted^2)^{1/2}
double zsr_norm(const Field& f, double s, double r);

// Stein derivative D^b f(x_j), 0 < b < 1: quadrature of
// int |f(x_j)-f(y)|^2 / |x_j-y|^{1+2b} dy over the period, with the cell
// |x_j - y| < dx closed in local-Lipschitz form.
Field stein_derivative(const Field& f, double b);

struct TrajectoryView {
    const std::vector<double>* times;
    const std::vector<Field>* fields;
};

// X_T^s norm: sup over stored times in (0,T] of ||u(t)||_s + t^{|s|/3} ||u(t)||
double xts_norm(const TrajectoryView& traj, double s, double T);

// Norm selector mirroring the experiment configuration files.
struct NormSpec {
    enum Kind { sobolev, homogeneous_sobolev, weighted_l2, stein_seminorm, xts } kind = sobolev;
    double index = 0.0;   // s, r or b depending on kind
    double horizon = 1.0; // for xts

    double evaluate(const Field& f) const;
    double evaluate(const TrajectoryView& traj) const;
};

}  // namespace npbo

#endif
