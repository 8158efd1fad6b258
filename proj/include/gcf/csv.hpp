#pragma once

// CSV serialization for every artifact the tools produce: body snapshots,
// flow record streams, solver reports, diagnostics reports, and the
// nonnegativity-search report.  All doubles are written with 17 significant
// digits so that reading a file back reproduces the exact bits.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gcf/diagnostics.hpp"
#include "gcf/errors.hpp"
#include "gcf/lemma_q.hpp"
#include "gcf/soliton.hpp"
#include "gcf/support.hpp"

namespace gcf::csv {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

// ---- body snapshots: angle,h ------------------------------------------

template <class Body>
inline void write_snapshot(std::ostream& os, const Body& body) {
    os << "angle,h\n";
    const std::vector<double>& h = body.support();
    for (std::size_t j = 0; j < h.size(); ++j)
        os << fmt17(body.angle(static_cast<int>(j))) << ',' << fmt17(h[j]) << '\n';
}

struct Snapshot {
    std::vector<double> angle;
    std::vector<double> h;
};

namespace detail {

inline double parse_double(const std::string& s, int line) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size())
        throw ConfigError("line " + std::to_string(line) + ": not a number: '" + s + "'");
    return v;
}

inline std::vector<std::string> split_fields(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace detail

inline Snapshot read_snapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("snapshot is empty");
    {
        std::vector<std::string> head = detail::split_fields(line);
        if (head.size() != 2 || head[0] != "angle" || head[1] != "h")
            throw ConfigError("snapshot header must be 'angle,h', got '" + line + "'");
    }
    Snapshot snap;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> f = detail::split_fields(line);
        if (f.size() != 2)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 2 fields, got " + std::to_string(f.size()));
        snap.angle.push_back(detail::parse_double(f[0], lineno));
        snap.h.push_back(detail::parse_double(f[1], lineno));
    }
    if (snap.h.empty()) throw ConfigError("snapshot has no samples");
    return snap;
}

// ---- flow record stream -------------------------------------------------

inline constexpr const char* kRecordHeader =
    "step,t,dt,volume,h_min,h_max,roundness,soliton_residual,"
    "Z_min,Z_max,W_max,entropy,cubic_norm";

inline void write_record_header(std::ostream& os) { os << kRecordHeader << '\n'; }

inline void write_record(std::ostream& os, const DiagnosticsRecord& rec) {
    os << rec.step << ',' << fmt17(rec.t) << ',' << fmt17(rec.dt) << ','
       << fmt17(rec.volume) << ',' << fmt17(rec.h_min) << ',' << fmt17(rec.h_max) << ','
       << fmt17(rec.roundness) << ',' << fmt17(rec.soliton_residual) << ','
       << fmt17(rec.z_min) << ',' << fmt17(rec.z_max) << ',' << fmt17(rec.w_max) << ','
       << fmt17(rec.entropy) << ',';
    if (rec.cubic_norm) os << fmt17(*rec.cubic_norm);
    os << '\n';
}

// ---- solver report ------------------------------------------------------

inline void write_solver_report(std::ostream& os, const std::vector<SolveIter>& history) {
    os << "iter,residual_maxnorm,damping_used\n";
    for (const SolveIter& it : history) {
        os << it.iter << ',' << fmt17(it.residual_maxnorm) << ',';
        if (it.damping_used) os << fmt17(*it.damping_used);
        os << '\n';
    }
}

// ---- diagnostics report ---------------------------------------------------

inline void write_diagnose_report(std::ostream& os, const std::vector<ReportRow>& rows) {
    os << "quantity,min,max,mean\n";
    for (const ReportRow& r : rows)
        os << r.quantity << ',' << fmt17(r.min) << ',' << fmt17(r.max) << ','
           << fmt17(r.mean) << '\n';
}

// ---- nonnegativity search report -----------------------------------------

inline void write_lemma_header(std::ostream& os, int n) {
    os << "n,alpha,trials,min_q,scale";
    for (int i = 1; i <= n; ++i) os << ",argmin_lambda" << i;
    for (int i = 1; i <= n; ++i) os << ",argmin_sigma" << i;
    os << '\n';
}

inline void write_lemma_row(std::ostream& os, int n, double alpha, long trials,
                            const MinSearchResult& r) {
    os << n << ',' << fmt17(alpha) << ',' << trials << ',' << fmt17(r.min_q) << ','
       << fmt17(r.scale);
    for (int i = 0; i < n; ++i)
        os << ',' << fmt17(r.argmin.lambda[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i)
        os << ',' << fmt17(r.argmin.sigma[static_cast<std::size_t>(i)]);
    os << '\n';
}

}  // namespace gcf::csv
