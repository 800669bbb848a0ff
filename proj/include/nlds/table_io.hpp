#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlds/experiment.hpp"

namespace nlds {

/// Three significant digits in the tables' style: "4.18", "7.09E-4", "1.17E+1"
/// (a zero exponent is dropped, exponent digits carry no padding).
inline std::string format_sci3(double v) {
    if (v == 0.0) return "0.00";
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2E", v);  // e.g. "7.09E-04"
    std::string s(buf);
    const auto epos = s.find('E');
    std::string mant = s.substr(0, epos);
    const char sign = s[epos + 1];
    int exp = std::atoi(s.c_str() + epos + 2);
    if (exp == 0) return mant;
    return mant + "E" + (sign == '-' ? "-" : "+") + std::to_string(exp);
}

/// Order entries: two fixed decimals, "--" when absent.
inline std::string format_order(const std::optional<double>& v) {
    if (!v) return "--";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return buf;
}

/// Shortest round-trip decimal form (for eps / tau columns).
inline std::string format_exact(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string metric_field(const ErrorRecord& rec, bool requested,
                                const std::optional<double>& v) {
    if (!requested) return "";
    if (rec.failed) return "FAIL";
    return v ? format_sci3(*v) : "--";
}

inline std::string order_field(const ErrorRecord& rec, bool requested,
                               const std::optional<double>& v) {
    if (!requested) return "";
    if (rec.failed) return "FAIL";
    return format_order(v);
}

inline void csv_row(std::ostream& os, const std::string& eps_label, const ErrorRecord& r,
                    const MetricSet& m) {
    os << eps_label << ',' << format_exact(r.tau) << ','
       << metric_field(r, m.h1, r.h1) << ',' << order_field(r, m.h1, r.order_h1) << ','
       << metric_field(r, m.density, r.l1_density) << ','
       << order_field(r, m.density, r.order_density) << ','
       << metric_field(r, m.current, r.rel_l1_current) << ','
       << order_field(r, m.current, r.order_current) << ','
       << metric_field(r, m.energy, r.rel_energy) << ','
       << order_field(r, m.energy, r.order_energy) << '\n';
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "eps,tau,h1,order_h1,l1_density,order_density,rel_l1_current,order_current,"
    "rel_energy,order_energy";

inline std::string to_csv(const ErrorTable& t) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (std::size_t ei = 0; ei < t.rows.size(); ++ei)
        for (const ErrorRecord& r : t.rows[ei])
            detail::csv_row(os, format_exact(t.eps_list[ei]), r, t.metrics);
    for (const ErrorRecord& r : t.max_row) detail::csv_row(os, "max", r, t.metrics);
    return os.str();
}

/// One matrix per metric: an error line and an order
/// line per eps, and the max-over-eps footer pair. The energy table gets an
/// extra absolute-error diagnostic block.
inline std::string to_markdown(const ErrorTable& t) {
    std::ostringstream os;
    auto emit_metric = [&](const char* title, std::optional<double> ErrorRecord::* metric,
                           std::optional<double> ErrorRecord::* order, bool with_orders) {
        os << "### " << title << "\n\n| eps \\ tau |";
        for (double tau : t.taus) os << ' ' << format_exact(tau) << " |";
        os << "\n|---|";
        for (std::size_t k = 0; k < t.taus.size(); ++k) os << "---|";
        os << '\n';
        auto line = [&](const std::string& label, const std::vector<ErrorRecord>& row) {
            os << "| " << label << " |";
            for (const ErrorRecord& r : row)
                os << ' ' << (r.failed ? "FAIL" : (r.*metric ? format_sci3(*(r.*metric)) : "--"))
                   << " |";
            os << '\n';
            if (!with_orders) return;
            os << "| order |";
            for (const ErrorRecord& r : row)
                os << ' ' << (r.failed ? "FAIL" : format_order(r.*order)) << " |";
            os << '\n';
        };
        for (std::size_t ei = 0; ei < t.rows.size(); ++ei)
            line(format_exact(t.eps_list[ei]), t.rows[ei]);
        line("max", t.max_row);
        os << '\n';
    };
    if (t.metrics.h1)
        emit_metric("Discrete H1 error", &ErrorRecord::h1, &ErrorRecord::order_h1, true);
    if (t.metrics.density)
        emit_metric("Density l1 error", &ErrorRecord::l1_density, &ErrorRecord::order_density, true);
    if (t.metrics.current)
        emit_metric("Current relative l1 error", &ErrorRecord::rel_l1_current,
                    &ErrorRecord::order_current, true);
    if (t.metrics.energy) {
        emit_metric("Energy relative error", &ErrorRecord::rel_energy, &ErrorRecord::order_energy,
                    true);
        emit_metric("Energy absolute error (diagnostic)", &ErrorRecord::abs_energy,
                    &ErrorRecord::order_energy, false);
    }
    return os.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open for writing: " + path.string());
    os << text;
    if (!os) throw io_error("short write: " + path.string());
}

/// CSV rows parsed back into records ("max" rows separated out). Fields print
/// at three significant digits, so the round trip is exact at that precision.
struct ParsedTable {
    std::vector<ErrorRecord> cells;
    std::vector<ErrorRecord> max_rows;
};

inline ParsedTable parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw io_error("csv: missing or unexpected header");
    ParsedTable out;
    auto opt_num = [](const std::string& s) -> std::optional<double> {
        if (s.empty() || s == "--" || s == "FAIL") return std::nullopt;
        return std::stod(s);
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string item;
        std::istringstream ls(line);
        while (std::getline(ls, item, ',')) f.push_back(item);
        f.resize(10);
        ErrorRecord r;
        const bool is_max = f[0] == "max";
        if (!is_max) r.eps = std::stod(f[0]);
        r.tau = std::stod(f[1]);
        r.failed = std::any_of(f.begin() + 2, f.end(), [](const std::string& s) { return s == "FAIL"; });
        r.h1 = opt_num(f[2]);
        r.order_h1 = opt_num(f[3]);
        r.l1_density = opt_num(f[4]);
        r.order_density = opt_num(f[5]);
        r.rel_l1_current = opt_num(f[6]);
        r.order_current = opt_num(f[7]);
        r.rel_energy = opt_num(f[8]);
        r.order_energy = opt_num(f[9]);
        (is_max ? out.max_rows : out.cells).push_back(std::move(r));
    }
    return out;
}

}  // namespace nlds
