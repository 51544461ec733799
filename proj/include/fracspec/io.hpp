#pragma once

// CSV and JSON emitters for the computed artifacts, plus the potential-grid
// reader.  Numbers are printed with 17 significant digits so output bytes
// round-trip and repeated runs compare equal.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracspec/bounds.hpp"
#include "fracspec/coherent.hpp"
#include "fracspec/potential.hpp"
#include "fracspec/spectrum.hpp"

namespace fracspec::io {

inline constexpr const char* kCsvSchemaVersion = "fracspec-csv v1";

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumSlice& slice) {
    os << "# " << kCsvSchemaVersion << " spectrum\n";
    const int d = slice.params().d;
    for (int j = 1; j <= d; ++j) os << "index_" << j << ",";
    os << "value,multiplicity_class\n";
    for (std::size_t i = 0; i < slice.size(); ++i) {
        auto idx = slice.index(i);
        for (int j = 0; j < d; ++j) {
            os << (idx.empty() ? 0 : idx[static_cast<std::size_t>(j)]) << ",";
        }
        os << format_double(slice.value(i)) << "," << slice.multiplicity_class(i) << "\n";
    }
}

inline void write_spectrum_json(std::ostream& os, const SpectrumSlice& slice) {
    nlohmann::json j;
    j["schema"] = "fracspec-json v1 spectrum";
    j["params"] = {{"d", slice.params().d},
                   {"s", slice.params().s},
                   {"L", slice.params().L},
                   {"D2s", slice.params().D2s}};
    j["cutoff_kind"] = slice.cutoff_kind() == CutoffKind::by_count ? "by_count" : "by_energy";
    j["energy_cutoff"] = slice.energy_cutoff();
    auto& records = j["records"];
    records = nlohmann::json::array();
    for (std::size_t i = 0; i < slice.size(); ++i) {
        auto idx = slice.index(i);
        records.push_back({{"index", std::vector<std::uint32_t>(idx.begin(), idx.end())},
                           {"value", slice.value(i)},
                           {"multiplicity_class", slice.multiplicity_class(i)},
                           {"multiplicity", slice.multiplicity(i)}});
    }
    os << j.dump(2) << "\n";
}

inline void write_bound_reports_csv(std::ostream& os, std::span<const BoundReport> reports) {
    os << "# " << kCsvSchemaVersion << " bounds-scan\n";
    os << "quantity,param_point,exact,bound,margin,satisfied\n";
    for (const auto& r : reports) {
        os << r.quantity << "," << r.param_point << "," << format_double(r.exact) << ","
           << format_double(r.bound) << "," << format_double(r.margin) << ","
           << (r.satisfied ? 1 : 0) << "\n";
    }
}

struct HeatRow {
    double t = 0.0;
    double Z_exact = 0.0;
    double Z_asymptote = 0.0;
    double Z_bound = 0.0;
};

inline void write_heat_csv(std::ostream& os, std::span<const HeatRow> rows) {
    os << "# " << kCsvSchemaVersion << " heat\n";
    os << "t,Z_exact,Z_asymptote,Z_bound\n";
    for (const auto& r : rows) {
        os << format_double(r.t) << "," << format_double(r.Z_exact) << ","
           << format_double(r.Z_asymptote) << "," << format_double(r.Z_bound) << "\n";
    }
}

struct RieszRow {
    double E = 0.0;
    double rho = 0.0;
    double R_exact = 0.0;
    double R_asymptote = 0.0;
    double R_bound = 0.0; // NaN when rho <= 1
};

inline void write_riesz_csv(std::ostream& os, std::span<const RieszRow> rows) {
    os << "# " << kCsvSchemaVersion << " riesz\n";
    os << "E,rho,R_exact,R_asymptote,R_bound\n";
    for (const auto& r : rows) {
        os << format_double(r.E) << "," << format_double(r.rho) << ","
           << format_double(r.R_exact) << "," << format_double(r.R_asymptote) << ","
           << format_double(r.R_bound) << "\n";
    }
}

inline void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows) {
    os << "# " << kCsvSchemaVersion << " coherent-convergence\n";
    os << "hbar,expectation,limit,gap\n";
    for (const auto& r : rows) {
        os << format_double(r.hbar) << "," << format_double(r.expectation) << ","
           << format_double(r.limit) << "," << format_double(r.gap) << "\n";
    }
}

/// Potential grid CSV: a header line `# fracspec-grid v1 d= dims= spacing=
/// origin=`, then one cell value per line in row-major order.
inline void write_potential_grid_csv(std::ostream& os, const SampledWell& g) {
    os << "# fracspec-grid v1 d=" << g.dims.size();
    os << " dims=";
    for (std::size_t i = 0; i < g.dims.size(); ++i) os << (i ? "x" : "") << g.dims[i];
    os << " spacing=";
    for (std::size_t i = 0; i < g.spacing.size(); ++i) {
        os << (i ? "x" : "") << format_double(g.spacing[i]);
    }
    os << " origin=";
    for (std::size_t i = 0; i < g.origin.size(); ++i) {
        os << (i ? "x" : "") << format_double(g.origin[i]);
    }
    os << "\n";
    for (double v : g.data) os << format_double(v) << "\n";
}

inline SampledWell read_potential_grid_csv(std::istream& is) {
    std::string header;
    std::getline(is, header);
    if (header.rfind("# fracspec-grid v1", 0) != 0) {
        throw std::runtime_error("read_potential_grid_csv: bad grid header");
    }
    auto field = [&](const std::string& key) {
        const std::string tag = key + "=";
        const auto pos = header.find(tag);
        if (pos == std::string::npos) {
            throw std::runtime_error("read_potential_grid_csv: missing field " + key);
        }
        const auto start = pos + tag.size();
        const auto end = header.find(' ', start);
        return header.substr(start, end == std::string::npos ? end : end - start);
    };
    auto split_x = [](const std::string& text) {
        std::vector<std::string> out;
        std::size_t start = 0;
        for (;;) {
            const auto pos = text.find('x', start);
            out.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return out;
    };
    SampledWell g;
    for (const auto& tok : split_x(field("dims"))) {
        g.dims.push_back(static_cast<std::size_t>(std::stoull(tok)));
    }
    for (const auto& tok : split_x(field("spacing"))) g.spacing.push_back(std::stod(tok));
    for (const auto& tok : split_x(field("origin"))) g.origin.push_back(std::stod(tok));
    std::size_t n = 1;
    for (std::size_t m : g.dims) n *= m;
    g.data.reserve(n);
    std::string line;
    while (g.data.size() < n && std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        g.data.push_back(std::stod(line));
    }
    if (g.data.size() != n) {
        throw std::runtime_error("read_potential_grid_csv: truncated grid data");
    }
    return g;
}

} // namespace fracspec::io
