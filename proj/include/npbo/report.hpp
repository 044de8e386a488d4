#ifndef NPBO_REPORT_HPP
#define NPBO_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace npbo {

// Measured quantity vs analytic bound with fitted exponents and a verdict.
struct EstimateReport {
    std::string name;
    bool pass = false;
    std::vector<std::string> columns;          // CSV header
    std::vector<std::vector<double>> rows;     // per-measurement series
    std::map<std::string, double> scalars;     // fitted exponents, constants
    std::vector<std::string> notes;

    void add_row(std::initializer_list<double> vals) { rows.emplace_back(vals); }

    std::string to_json() const;
    void write_csv(const std::string& path) const;
    void write_json(const std::string& path) const;
};

// least-squares slope of y vs x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);
// slope of log(y) vs log(x)
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace npbo

#endif
