#include "npbo/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace npbo {

namespace {

// FFTW planning is not thread-safe; plans are cached per size and executed
// on caller buffers via the new-array interface.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

PlanPair get_plans(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> dummy(n);
    auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[n] = pp;
    return pp;
}

void execute(fftw_plan plan, std::vector<cplx>& buf) {
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace

std::vector<cplx> fft_forward(const std::vector<cplx>& in) {
    std::vector<cplx> out = in;
    execute(get_plans((int)in.size()).fwd, out);
    return out;
}

std::vector<cplx> fft_backward(const std::vector<cplx>& in) {
    std::vector<cplx> out = in;
    execute(get_plans((int)in.size()).bwd, out);
    return out;
}

Field::Field(TorusGrid grid, std::vector<cplx> coeffs, bool is_real)
    : grid_(grid), c_(std::move(coeffs)), is_real_(is_real) {
    if ((int)c_.size() != grid_.n)
        throw std::invalid_argument("Field: coefficient count does not match grid");
}

Field Field::zero(const TorusGrid& g) {
    return Field(g, std::vector<cplx>(g.n, cplx(0.0)), true);
}

// c_k = dx * sum_j f(x_j) e^{-i xi_k x_j}; with x_j = -L + j dx this is
// dx * (-1)^k * DFT_k.
Field Field::from_samples(const TorusGrid& g, const std::vector<cplx>& samples) {
    if ((int)samples.size() != g.n)
        throw std::invalid_argument("from_samples: sample count does not match grid");
    std::vector<cplx> c = fft_forward(samples);
    const double dx = g.dx();
    for (int j = 0; j < g.n; ++j) {
        double sign = (g.wavenumber(j) % 2 == 0) ? 1.0 : -1.0;
        c[j] *= sign * dx;
    }
    return Field(g, std::move(c), false);
}

Field Field::from_samples(const TorusGrid& g, const std::vector<double>& samples) {
    std::vector<cplx> cs(samples.begin(), samples.end());
    Field f = from_samples(g, cs);
    f.is_real_ = true;
    return f;
}

Field Field::from_function(const TorusGrid& g, const std::function<double(double)>& f) {
    std::vector<double> s(g.n);
    for (int j = 0; j < g.n; ++j) s[j] = f(g.node(j));
    return from_samples(g, s);
}

std::vector<cplx> Field::physical() const {
    const int n = grid_.n;
    std::vector<cplx> tmp(n);
    for (int j = 0; j < n; ++j) {
        double sign = (grid_.wavenumber(j) % 2 == 0) ? 1.0 : -1.0;
        tmp[j] = sign * c_[j];
    }
    std::vector<cplx> out = fft_backward(tmp);
    const double scale = 1.0 / (n * grid_.dx());
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<double> Field::physical_real() const {
    std::vector<cplx> p = physical();
    std::vector<double> out(p.size());
    for (size_t j = 0; j < p.size(); ++j) out[j] = p[j].real();
    return out;
}

Field Field::apply_multiplier(const std::function<cplx(double)>& m) const {
    const int n = grid_.n;
    std::vector<cplx> c(n);
    bool hermitian = true;
    for (int j = 0; j < n; ++j) {
        cplx mv = m(grid_.freq(j));
        if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
            throw std::runtime_error("apply_multiplier: non-finite multiplier value");
        c[j] = mv * c_[j];
    }
    // realness survives iff m(-xi) = conj(m(xi)) on the lattice
    for (int k = 1; k < n / 2 && hermitian; ++k) {
        cplx a = m(grid_.freq(k));
        cplx b = m(grid_.freq(n - k));
        if (std::abs(b - std::conj(a)) > 1e-14 * (1.0 + std::abs(a))) hermitian = false;
    }
    if (hermitian && std::abs(m(0.0).imag()) > 1e-14) hermitian = false;
    if (hermitian && std::abs(m(grid_.freq(n / 2)).imag()) > 1e-14) hermitian = false;
    return Field(grid_, std::move(c), is_real_ && hermitian);
}

Field Field::hilbert() const {
    const int n = grid_.n;
    std::vector<cplx> c(n);
    for (int j = 0; j < n; ++j) {
        double xi = grid_.freq(j);
        double s = (xi > 0.0) - (xi < 0.0);
        c[j] = cplx(0.0, s) * c_[j];
    }
    return Field(grid_, std::move(c), is_real_);
}

Field Field::derivative() const {
    const int n = grid_.n;
    std::vector<cplx> c(n);
    for (int j = 0; j < n; ++j) c[j] = cplx(0.0, grid_.freq(j)) * c_[j];
    // the unpaired Nyquist mode would turn pure imaginary; drop it
    c[n / 2] = 0.0;
    return Field(grid_, std::move(c), is_real_);
}

Field& Field::operator+=(const Field& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("Field: grid mismatch");
    for (int j = 0; j < grid_.n; ++j) c_[j] += o.c_[j];
    is_real_ = is_real_ && o.is_real_;
    return *this;
}

Field& Field::operator-=(const Field& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("Field: grid mismatch");
    for (int j = 0; j < grid_.n; ++j) c_[j] -= o.c_[j];
    is_real_ = is_real_ && o.is_real_;
    return *this;
}

Field& Field::operator*=(double a) {
    for (auto& v : c_) v *= a;
    return *this;
}

namespace {
constexpr uint64_t kFieldMagic = 0x4e50424f464c4431ull;  // "NPBOFLD1"
}

void write_field_binary(const Field& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field_binary: cannot open " + path);
    uint64_t magic = kFieldMagic;
    double L = f.grid().L;
    uint64_t n = (uint64_t)f.grid().n;
    os.write(reinterpret_cast<const char*>(&magic), 8);
    os.write(reinterpret_cast<const char*>(&L), 8);
    os.write(reinterpret_cast<const char*>(&n), 8);
    std::vector<cplx> p = f.physical();
    for (const cplx& v : p) {
        // a real field's samples are real by construction; drop FFT roundoff
        double re = v.real(), im = f.is_real() ? 0.0 : v.imag();
        os.write(reinterpret_cast<const char*>(&re), 8);
        os.write(reinterpret_cast<const char*>(&im), 8);
    }
}

Field read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field_binary: cannot open " + path);
    uint64_t magic = 0, n = 0;
    double L = 0;
    is.read(reinterpret_cast<char*>(&magic), 8);
    is.read(reinterpret_cast<char*>(&L), 8);
    is.read(reinterpret_cast<char*>(&n), 8);
    if (magic != kFieldMagic) throw std::runtime_error("read_field_binary: bad magic");
    TorusGrid g(L, (int)n);
    std::vector<cplx> samples(n);
    bool real = true;
    for (auto& v : samples) {
        double re, im;
        is.read(reinterpret_cast<char*>(&re), 8);
        is.read(reinterpret_cast<char*>(&im), 8);
        v = cplx(re, im);
        if (im != 0.0) real = false;
    }
    if (!is) throw std::runtime_error("read_field_binary: truncated file");
    Field f = Field::from_samples(g, samples);
    if (real) {
        // rebuild through the real path so the flag is exact
        std::vector<double> rs(n);
        for (size_t j = 0; j < n; ++j) rs[j] = samples[j].real();
        f = Field::from_samples(g, rs);
    }
    return f;
}

void write_field_csv(const Field& f, std::ostream& os) {
    std::vector<cplx> p = f.physical();
    os << "x,re,im\n" << std::setprecision(17);
    for (int j = 0; j < f.grid().n; ++j)
        os << f.grid().node(j) << "," << p[j].real() << "," << p[j].imag() << "\n";
}

}  // namespace npbo
