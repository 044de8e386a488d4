#ifndef NPBO_CORPUS_HPP
#define NPBO_CORPUS_HPP

#include <cstdint>
#include <vector>

#include "npbo/field.hpp"

namespace npbo {

enum class CorpusKind { gaussian, gaussian_odd, rough_spectral, box };

struct CorpusParams {
    int count = 10;
    double amplitude = 0.1;
    double width_min = 0.5;   // gaussian width range
    double width_max = 2.0;
    double center_spread = 4.0;
    double s = -1.0;          // rough_spectral target index
    double N = 64.0;          // box datum
    double gamma = 1.0;
    double box_s = -2.0;
};

// Reproducible random fields; every non-rough field must decay below 1e-12
// (relative) at |x| = L/2.  Rough spectral data are enveloped so they satisfy
// the same margin.
std::vector<Field> generate_corpus(CorpusKind kind, const CorpusParams& params,
                                   uint64_t seed, const TorusGrid& grid);

// decay-margin check used by the generator; throws naming L on violation
void check_decay_margin(const Field& f);

}  // namespace npbo

#endif
