#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "zernike/experiments.hpp"

namespace zernike {

// Shortest decimal that round-trips back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

inline std::string convention_name(SeminormConvention conv) {
    return conv == SeminormConvention::Cartesian ? "cartesian" : "complex";
}

// CSV layout: header N,rat0,egr0,rat1,egr1,...; egr cells empty on the first
// row; LF line endings.
inline void write_rate_table_csv(const RateTable& table, std::ostream& os) {
    os << "N";
    for (int r = 0; r <= table.l; ++r) os << ",rat" << r << ",egr" << r;
    os << "\n";
    for (const auto& row : table.rows) {
        os << row.N;
        for (int r = 0; r <= table.l; ++r) {
            const auto ri = static_cast<std::size_t>(r);
            os << ',' << format_double(row.rat[ri]) << ',';
            if (row.egr[ri]) os << format_double(*row.egr[ri]);
        }
        os << "\n";
    }
}

inline nlohmann::json rate_table_to_json(const RateTable& table) {
    nlohmann::json j;
    j["alpha"] = table.alpha;
    j["l"] = table.l;
    j["convention"] = convention_name(table.convention);
    j["use_norms"] = table.use_norms;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json jr;
        jr["N"] = row.N;
        jr["rat"] = row.rat;
        nlohmann::json egr = nlohmann::json::array();
        for (const auto& e : row.egr) {
            if (e)
                egr.push_back(*e);
            else
                egr.push_back(nullptr);
        }
        jr["egr"] = std::move(egr);
        j["rows"].push_back(std::move(jr));
    }
    return j;
}

// Log-log plot data: computed ratios next to the reference curves
// C N^{e(l,r)}, each anchored so that it passes through the table's last row.
inline void write_plot_data_csv(const RateTable& table, std::ostream& os) {
    os << "N";
    for (int r = 0; r <= table.l; ++r) os << ",rat" << r;
    for (int r = 0; r <= table.l; ++r) os << ",ref" << r;
    os << "\n";
    const auto& last = table.rows.back();
    std::vector<double> anchor(static_cast<std::size_t>(table.l) + 1);
    for (int r = 0; r <= table.l; ++r) {
        const double e = reference_exponent(table.l, r);
        anchor[static_cast<std::size_t>(r)] =
            last.rat[static_cast<std::size_t>(r)] / std::pow(static_cast<double>(last.N), e);
    }
    for (const auto& row : table.rows) {
        os << row.N;
        for (int r = 0; r <= table.l; ++r)
            os << ',' << format_double(row.rat[static_cast<std::size_t>(r)]);
        for (int r = 0; r <= table.l; ++r) {
            const double e = reference_exponent(table.l, r);
            os << ','
               << format_double(anchor[static_cast<std::size_t>(r)] *
                                std::pow(static_cast<double>(row.N), e));
        }
        os << "\n";
    }
}

}  // namespace zernike
