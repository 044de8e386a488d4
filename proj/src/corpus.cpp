#include "npbo/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "npbo/illposed.hpp"

namespace npbo {

void check_decay_margin(const Field& f) {
    std::vector<cplx> p = f.physical();
    const TorusGrid& g = f.grid();
    double peak = 0.0, tail = 0.0;
    for (int j = 0; j < g.n; ++j) {
        double v = std::abs(p[j]);
        peak = std::max(peak, v);
        if (std::abs(g.node(j)) >= 0.5 * g.L) tail = std::max(tail, v);
    }
    if (peak > 0.0 && tail > 1e-12 * peak)
        throw std::invalid_argument(
            "corpus: field does not decay below 1e-12 at |x| = L/2; increase L (currently " +
            std::to_string(g.L) + ")");
}

std::vector<Field> generate_corpus(CorpusKind kind, const CorpusParams& params,
                                   uint64_t seed, const TorusGrid& grid) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Field> out;
    out.reserve(params.count);

    switch (kind) {
        case CorpusKind::gaussian:
        case CorpusKind::gaussian_odd: {
            bool odd = kind == CorpusKind::gaussian_odd;
            for (int i = 0; i < params.count; ++i) {
                double w = params.width_min +
                           (params.width_max - params.width_min) * unit(rng);
                double x0 = odd ? 0.0 : params.center_spread * (2.0 * unit(rng) - 1.0);
                double a = params.amplitude * (0.5 + unit(rng));
                Field f = Field::from_function(grid, [=](double x) {
                    double y = x - x0;
                    double env = std::exp(-y * y / (2.0 * w * w));
                    return odd ? a * y * env : a * env;
                });
                check_decay_margin(f);
                out.push_back(std::move(f));
            }
            break;
        }
        case CorpusKind::rough_spectral: {
            // |phi-hat(xi)| = <xi>^{-(s + 1/2 + eps)} with random phases, then
            // a smooth envelope to meet the decay margin
            const double eps = 0.05;
            const double decay = params.s + 0.5 + eps;
            for (int i = 0; i < params.count; ++i) {
                std::vector<cplx> c(grid.n, cplx(0.0));
                for (int k = 1; k < grid.n / 2; ++k) {
                    double xi = grid.dxi() * k;
                    double mag = params.amplitude * std::pow(1.0 + xi * xi, -0.5 * decay);
                    double phase = 2.0 * M_PI * unit(rng);
                    c[k] = std::polar(mag, phase);
                    c[grid.n - k] = std::conj(c[k]);
                }
                Field raw(grid, std::move(c), true);
                std::vector<double> samples = raw.physical_real();
                for (int j = 0; j < grid.n; ++j) {
                    double x = grid.node(j);
                    samples[j] *= std::exp(-std::pow(x / (0.35 * grid.L), 12.0));
                }
                Field f = Field::from_samples(grid, samples);
                check_decay_margin(f);
                out.push_back(std::move(f));
            }
            break;
        }
        case CorpusKind::box: {
            InflationConfig cfg;
            cfg.N = params.N;
            cfg.gamma = params.gamma;
            cfg.s = params.box_s;
            for (int i = 0; i < params.count; ++i)
                out.push_back(build_box_datum(cfg, grid));
            break;
        }
    }
    return out;
}

}  // namespace npbo
