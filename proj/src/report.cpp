#include "npbo/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace npbo {

std::string EstimateReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["pass"] = pass;
    j["columns"] = columns;
    j["rows"] = rows;
    j["scalars"] = scalars;
    j["notes"] = notes;
    return j.dump(2);
}

void EstimateReport::write_json(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("EstimateReport: cannot open " + path);
    os << to_json() << "\n";
}

void EstimateReport::write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("EstimateReport: cannot open " + path);
    os << std::setprecision(17);
    for (size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need >= 2 matching points");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= x.size(); my /= y.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_slope(lx, ly);
}

}  // namespace npbo
