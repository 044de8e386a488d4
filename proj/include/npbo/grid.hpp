#ifndef NPBO_GRID_HPP
#define NPBO_GRID_HPP

#include <cmath>
#include <stdexcept>

namespace npbo {

// Uniform periodic grid on [-L, L) with n nodes.  Frequencies are the
// lattice xi_k = pi*k/L, k = -n/2 .. n/2-1 (FFT ordering in storage).
struct TorusGrid {
    double L = 64.0;
    int n = 1024;

    TorusGrid() = default;
    TorusGrid(double half_length, int n_modes) : L(half_length), n(n_modes) {
        if (L <= 0.0) throw std::invalid_argument("TorusGrid: L must be positive");
        if (n < 16 || (n & (n - 1)) != 0)
            throw std::invalid_argument("TorusGrid: n must be a power of two, n >= 16");
    }

    double dx() const { return 2.0 * L / n; }
    double dxi() const { return M_PI / L; }

    // node index j = 0..n-1
    double node(int j) const { return -L + j * dx(); }

    // signed lattice wavenumber for FFT-ordered index j
    int wavenumber(int j) const { return j < n / 2 ? j : j - n; }
    double freq(int j) const { return dxi() * wavenumber(j); }

    bool operator==(const TorusGrid& o) const { return L == o.L && n == o.n; }
};

}  // namespace npbo

#endif
