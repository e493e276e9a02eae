#include "wron/report.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace wron {

std::string format_double(double v, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v);
    return buf;
}

namespace {

constexpr int kJsonDigits = 17;
constexpr int kCsvDigits = 12;

// JSON has no literal for non-finite numbers.
std::string jnum(double v) {
    if (!std::isfinite(v)) return "null";
    return format_double(v, kJsonDigits);
}

std::string cnum(double v) { return format_double(v, kCsvDigits); }

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string jvec(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += jnum(v[i]);
    }
    return out + "]";
}

std::string jmatrix(const Matrix& m) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out += ",";
        out += "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += jnum(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

std::string jresiduals(const ResidualSet& r) {
    std::string out = "{";
    const auto& names = ResidualSet::names();
    const auto values = r.values();
    for (int i = 0; i < ResidualSet::kCount; ++i) {
        if (i) out += ",";
        out += "\"" + std::string(names[static_cast<size_t>(i)]) + "\":" + jnum(values[static_cast<size_t>(i)]);
    }
    return out + "}";
}

std::string jgrid(const GridSpec& g) {
    std::ostringstream out;
    out << "{\"t0\":" << jnum(g.t0) << ",\"t1\":" << jnum(g.t1) << ",\"samples\":" << g.samples
        << ",\"seed\":" << g.seed << ",\"tol\":" << jnum(g.tol) << "}";
    return out.str();
}

void sample_status(std::ostringstream& out, double t, bool degenerate,
                   const std::optional<std::string>& domain_error) {
    out << "{\"t\":" << jnum(t) << ",\"degenerate\":" << (degenerate ? "true" : "false");
    if (domain_error) out << ",\"domain_error\":\"" << json_escape(*domain_error) << "\"";
}

struct Counts {
    int evaluated = 0, degenerate = 0, domain_errors = 0;
};

Counts count_rows(const std::vector<CommandSample>& rows) {
    Counts c;
    for (const auto& r : rows) {
        if (r.degenerate)
            ++c.degenerate;
        else if (r.domain_error)
            ++c.domain_errors;
        else
            ++c.evaluated;
    }
    return c;
}

std::string render_command_json(const char* command, int n, const GridSpec& grid,
                                const std::vector<CommandSample>& rows,
                                const std::function<void(std::ostringstream&, const CommandSample&)>& body) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"command\": \"" << command << "\",\n";
    out << "  \"n\": " << n << ",\n";
    out << "  \"grid\": " << jgrid(grid) << ",\n";
    out << "  \"samples\": [\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const CommandSample& r = rows[i];
        std::ostringstream line;
        sample_status(line, r.t, r.degenerate, r.domain_error);
        if (r.evaluated()) body(line, r);
        line << "}";
        out << "    " << line.str() << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    const Counts c = count_rows(rows);
    out << "  \"summary\": {\"evaluated\":" << c.evaluated << ",\"degenerate\":" << c.degenerate
        << ",\"domain_errors\":" << c.domain_errors << "}\n";
    out << "}\n";
    return out.str();
}

std::string csv_token_row(double t, const std::string& token, int columns) {
    std::string row = cnum(t);
    for (int i = 0; i < columns; ++i) row += "," + token;
    return row + "\n";
}

} // namespace

std::string render_recover_json(int n, const GridSpec& grid, const std::vector<CommandSample>& rows) {
    return render_command_json("recover", n, grid, rows,
                               [](std::ostringstream& out, const CommandSample& r) {
                                   out << ",\"p\":" << jvec(r.p);
                               });
}

std::string render_recover_csv(int n, const std::vector<CommandSample>& rows) {
    std::string out = "t";
    for (int i = 1; i <= n; ++i) out += ",p_" + std::to_string(i);
    out += "\n";
    for (const CommandSample& r : rows) {
        if (r.degenerate) {
            out += csv_token_row(r.t, "degenerate", n);
        } else if (r.domain_error) {
            out += csv_token_row(r.t, "domain_error", n);
        } else {
            std::string row = cnum(r.t);
            for (double v : r.p) row += "," + cnum(v);
            out += row + "\n";
        }
    }
    return out;
}

std::string render_cartan_json(int n, const GridSpec& grid, const std::vector<CommandSample>& rows) {
    return render_command_json("cartan", n, grid, rows,
                               [](std::ostringstream& out, const CommandSample& r) {
                                   out << ",\"q_desc\":" << jvec(r.cartan->q_desc)
                                       << ",\"p_hat\":" << jvec(r.cartan->p_hat)
                                       << ",\"R\":" << jmatrix(r.cartan->R)
                                       << ",\"L\":" << jmatrix(r.cartan->L);
                               });
}

std::string render_cartan_csv(int n, const std::vector<CommandSample>& rows) {
    std::string out = "t";
    for (int i = 1; i <= n; ++i) out += ",q_" + std::to_string(i);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) out += ",R_" + std::to_string(i) + "_" + std::to_string(j);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) out += ",L_" + std::to_string(i) + "_" + std::to_string(j);
    out += "\n";
    const int columns = n + 2 * n * n;
    for (const CommandSample& r : rows) {
        if (r.degenerate) {
            out += csv_token_row(r.t, "degenerate", columns);
        } else if (r.domain_error) {
            out += csv_token_row(r.t, "domain_error", columns);
        } else {
            std::string row = cnum(r.t);
            for (double v : r.cartan->q_desc) row += "," + cnum(v);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) row += "," + cnum(r.cartan->R(i, j));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) row += "," + cnum(r.cartan->L(i, j));
            out += row + "\n";
        }
    }
    return out;
}

std::string render_probe_json(int n, const GridSpec& grid, const std::vector<CommandSample>& rows) {
    return render_command_json("probe-abel", n, grid, rows,
                               [](std::ostringstream& out, const CommandSample& r) {
                                   const AbelProbe& p = *r.probe;
                                   out << ",\"det_Wprime\":" << jnum(p.det_Wprime)
                                       << ",\"ddet_W\":" << jnum(p.ddet_W)
                                       << ",\"trace_R\":" << jnum(p.trace_R)
                                       << ",\"det_R\":" << jnum(p.det_R)
                                       << ",\"p1\":" << jnum(p.p1) << ",\"pn\":" << jnum(p.pn);
                               });
}

std::string render_probe_csv(int n, const std::vector<CommandSample>& rows) {
    (void)n;
    std::string out = "t,det_Wprime,ddet_W,trace_R,det_R,p_1,p_n\n";
    for (const CommandSample& r : rows) {
        if (r.degenerate) {
            out += csv_token_row(r.t, "degenerate", 6);
        } else if (r.domain_error) {
            out += csv_token_row(r.t, "domain_error", 6);
        } else {
            const AbelProbe& p = *r.probe;
            out += cnum(r.t) + "," + cnum(p.det_Wprime) + "," + cnum(p.ddet_W) + "," +
                   cnum(p.trace_R) + "," + cnum(p.det_R) + "," + cnum(p.p1) + "," + cnum(p.pn) +
                   "\n";
        }
    }
    return out;
}

std::string render_verify_json(const VerifyReport& report) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"command\": \"verify\",\n";
    out << "  \"n\": " << report.n << ",\n";
    out << "  \"grid\": " << jgrid(report.grid) << ",\n";
    out << "  \"samples\": [\n";
    for (size_t i = 0; i < report.samples.size(); ++i) {
        const SampleResult& s = report.samples[i];
        std::ostringstream line;
        sample_status(line, s.t, s.degenerate, s.domain_error);
        if (s.evaluated()) {
            line << ",\"kappa\":" << jnum(s.kappa) << ",\"p\":" << jvec(s.p)
                 << ",\"q_desc\":" << jvec(s.q_desc) << ",\"p_hat\":" << jvec(s.p_hat)
                 << ",\"residuals\":" << jresiduals(s.residuals)
                 << ",\"pass\":" << (s.pass ? "true" : "false");
        }
        line << "}";
        out << "    " << line.str() << (i + 1 < report.samples.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    out << "  \"summary\": {\"verdict\":\"" << verdict_name(report.verdict) << "\""
        << ",\"evaluated\":" << report.evaluated_count
        << ",\"degenerate\":" << report.degenerate_count
        << ",\"domain_errors\":" << report.domain_error_count
        << ",\"worst_residuals\":" << jresiduals(report.worst) << "}\n";
    out << "}\n";
    return out.str();
}

std::string render_verify_csv(const VerifyReport& report) {
    std::string out = "t,kappa,status";
    for (const char* name : ResidualSet::names()) out += std::string(",") + name;
    out += ",pass\n";
    for (const SampleResult& s : report.samples) {
        std::string row = cnum(s.t);
        if (s.degenerate) {
            row += ",,degenerate";
            for (int i = 0; i < ResidualSet::kCount; ++i) row += ",";
            row += ",";
        } else if (s.domain_error) {
            row += ",,domain_error";
            for (int i = 0; i < ResidualSet::kCount; ++i) row += ",";
            row += ",";
        } else {
            row += "," + cnum(s.kappa) + ",ok";
            for (double v : s.residuals.values()) row += "," + cnum(v);
            row += s.pass ? ",true" : ",false";
        }
        out += row + "\n";
    }
    return out;
}

} // namespace wron
