#ifndef NPBO_CONFIG_HPP
#define NPBO_CONFIG_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace npbo {

// "key = value" files with [section] headers; keys are stored as
// "section.key".  '#' starts a comment.
class ExperimentConfig {
  public:
    static ExperimentConfig parse(std::istream& is) {
        ExperimentConfig cfg;
        std::string line, section;
        while (std::getline(is, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                size_t a = s.find_first_not_of(" \t\r");
                if (a == std::string::npos) return std::string();
                size_t b = s.find_last_not_of(" \t\r");
                return s.substr(a, b - a + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config: expected key = value, got: " + line);
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key.empty()) throw std::invalid_argument("config: empty key in: " + line);
            cfg.values_[section.empty() ? key : section + "." + key] = val;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            size_t pos = 0;
            double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument("config: field '" + key + "' is not a number: " +
                                        it->second);
        }
    }

    uint64_t get_u64(const std::string& key, uint64_t fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stoull(it->second);
        } catch (...) {
            throw std::invalid_argument("config: field '" + key + "' is not an integer: " +
                                        it->second);
        }
    }

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace npbo

#endif
