/// @file ledger_io.hpp
/// @brief Ledger CSV: fixed header, 17 significant digits, NaN as `nan`.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"

namespace radswirl {

/// Value of a named ledger column.
inline double ledger_value(const DiagRecord& r, const std::string& col) {
    if (col == "t") return r.t;
    if (col == "mass") return r.mass;
    if (col == "energy") return r.energy;
    if (col == "dissipation_cum") return r.dissipation_cum;
    if (col == "energy_residual") return r.energy_residual;
    if (col == "sup_rho") return r.sup_rho;
    if (col == "G_boundary_direct") return r.G_boundary_direct;
    if (col == "G_boundary_formula") return r.G_boundary_formula;
    if (col == "transport_residual_norm") return r.transport_residual_norm;
    if (col == "supnorm_ineq_slack") return r.supnorm_ineq_slack;
    if (col == "rho_u3") return r.rho_u3;
    if (col == "rho_u_2pd") return r.rho_u_2pd;
    if (col == "dist_rho_L2") return r.dist_rho_L2;
    if (col == "dist_gradu_L2") return r.dist_gradu_L2;
    if (col == "A1sq") return r.A1sq;
    if (col == "A2sq") return r.A2sq;
    if (col == "A3sq") return r.A3sq;
    if (col == "cap_ok") return r.cap_ok;
    throw std::invalid_argument("unknown ledger column '" + col + "'");
}

inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_ledger_csv(std::ostream& os, std::span<const DiagRecord> ledger,
                             const std::vector<std::string>& columns = ledger_columns()) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const DiagRecord& r : ledger) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            os << (c ? "," : "");
            if (columns[c] == "cap_ok") os << r.cap_ok;
            else os << format_real(ledger_value(r, columns[c]));
        }
        os << '\n';
    }
}

inline void write_ledger_csv(const std::string& path, std::span<const DiagRecord> ledger,
                             const std::vector<std::string>& columns = ledger_columns()) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_ledger_csv(f, ledger, columns);
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace radswirl
