#ifndef NPBO_FIELD_HPP
#define NPBO_FIELD_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "npbo/grid.hpp"

namespace npbo {

using cplx = std::complex<double>;

// One snapshot of a function on the torus, stored spectrally.  Coefficients
// are calibrated to the continuum transform: c_k ~ int f(x) e^{-i xi_k x} dx,
// kept in FFT ordering (index j <-> wavenumber j or j-n).
class Field {
  public:
    Field() = default;
    Field(TorusGrid grid, std::vector<cplx> coeffs, bool is_real);

    static Field zero(const TorusGrid& g);
    // forward_transform of physical samples (one per node)
    static Field from_samples(const TorusGrid& g, const std::vector<double>& samples);
    static Field from_samples(const TorusGrid& g, const std::vector<cplx>& samples);
    // sample an analytic function at the nodes
    static Field from_function(const TorusGrid& g, const std::function<double(double)>& f);

    const TorusGrid& grid() const { return grid_; }
    bool is_real() const { return is_real_; }
    int size() const { return grid_.n; }

    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }
    cplx coeff(int j) const { return c_[j]; }

    cplx mean_coeff() const { return c_[0]; }  // \hat f(0)

    std::vector<cplx> physical() const;        // inverse transform
    std::vector<double> physical_real() const; // real parts of the samples

    // c_k <- m(xi_k) c_k; realness preserved iff m(-xi) = conj(m(xi))
    Field apply_multiplier(const std::function<cplx(double)>& m) const;
    Field hilbert() const;     // multiplier i*sgn(xi), sgn(0) = 0
    Field derivative() const;  // multiplier i*xi

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double a, Field f) { return f *= a; }

  private:
    TorusGrid grid_;
    std::vector<cplx> c_;
    bool is_real_ = true;
};

// Raw FFTs used by Field; exposed for oracle tests.
std::vector<cplx> fft_forward(const std::vector<cplx>& in);
std::vector<cplx> fft_backward(const std::vector<cplx>& in);

// Binary column file: header (magic, L, n) then n (Re, Im) little-endian doubles
// of the physical samples.
void write_field_binary(const Field& f, const std::string& path);
Field read_field_binary(const std::string& path);
// CSV: x, Re f, Im f
void write_field_csv(const Field& f, std::ostream& os);

}  // namespace npbo

#endif
