#include "e2rc/degree_distribution.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace e2rc {

namespace {

void validate_side(const std::map<std::size_t, double>& side, const char* name) {
    if (side.empty()) return;
    double sum = 0.0;
    for (const auto& [degree, fraction] : side) {
        if (degree == 0)
            throw std::invalid_argument(std::string(name) + " distribution has a degree-0 term");
        if (!(fraction >= 0.0) || fraction > 1.0)
            throw std::invalid_argument(std::string(name) + " fraction outside [0, 1]");
        sum += fraction;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(name) + " fractions do not sum to 1");
}

void normalize_side(std::map<std::size_t, double>& side, const char* name) {
    if (side.empty()) return;
    double sum = 0.0;
    for (const auto& [degree, fraction] : side) sum += fraction;
    if (std::abs(sum - 1.0) > 1e-3)
        throw std::invalid_argument(std::string(name) + " fractions sum to " + std::to_string(sum));
    for (auto& [degree, fraction] : side) fraction /= sum;
}

}  // namespace

void DegreeDistribution::validate() const {
    if (variable.empty()) throw std::invalid_argument("variable distribution is empty");
    validate_side(variable, "variable");
    validate_side(check, "check");
}

double DegreeDistribution::mean_degree(const std::map<std::size_t, double>& side) {
    double inv = 0.0;
    for (const auto& [degree, fraction] : side) inv += fraction / static_cast<double>(degree);
    if (inv <= 0.0) throw std::invalid_argument("degenerate distribution");
    return 1.0 / inv;
}

DegreeDistribution parse_distribution(const std::string& text) {
    DegreeDistribution dist;
    std::map<std::size_t, double>* side = nullptr;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        if (first == "variable") { side = &dist.variable; continue; }
        if (first == "check") { side = &dist.check; continue; }
        if (!side)
            throw std::runtime_error("distribution parse error at line " + std::to_string(line_no) +
                                     ": entry before a section header");
        if (!first.empty() && first.back() == ':') first.pop_back();
        std::size_t degree = 0;
        double fraction = 0.0;
        try {
            degree = std::stoul(first);
        } catch (const std::exception&) {
            throw std::runtime_error("distribution parse error at line " + std::to_string(line_no) +
                                     ": bad degree");
        }
        if (!(fields >> fraction))
            throw std::runtime_error("distribution parse error at line " + std::to_string(line_no) +
                                     ": missing fraction");
        if (!side->emplace(degree, fraction).second)
            throw std::runtime_error("distribution parse error at line " + std::to_string(line_no) +
                                     ": repeated degree");
    }
    normalize_side(dist.variable, "variable");
    normalize_side(dist.check, "check");
    dist.validate();
    return dist;
}

std::string format_distribution(const DegreeDistribution& dist) {
    std::ostringstream out;
    char buf[64];
    out << "variable\n";
    for (const auto& [degree, fraction] : dist.variable) {
        std::snprintf(buf, sizeof buf, "%zu %.10g\n", degree, fraction);
        out << buf;
    }
    if (!dist.check.empty()) {
        out << "check\n";
        for (const auto& [degree, fraction] : dist.check) {
            std::snprintf(buf, sizeof buf, "%zu %.10g\n", degree, fraction);
            out << buf;
        }
    }
    return out.str();
}

}  // namespace e2rc
