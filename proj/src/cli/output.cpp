#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "potalg/cli.hpp"
#include "potalg/errors.hpp"

#ifndef POTALG_VERSION
#define POTALG_VERSION "0.0.0"
#endif

namespace potalg::cli {

namespace {

constexpr int kSchemaVersion = 1;

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Config echo shared by both formats, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", std::string(to_string(cfg.command)));
    kv.emplace_back("family", std::string(to_string(cfg.params.family)));
    kv.emplace_back("B", format_number(cfg.params.B));
    kv.emplace_back("k", format_number(cfg.params.k));
    kv.emplace_back("m", std::to_string(cfg.params.m));
    kv.emplace_back("x_min", format_number(cfg.grid.x_min));
    kv.emplace_back("x_max", format_number(cfg.grid.x_max));
    kv.emplace_back("n", std::to_string(cfg.grid.n_points));
    if (cfg.command == Command::Spectrum || cfg.command == Command::Sweep)
        kv.emplace_back("levels", std::to_string(cfg.levels));
    auto range = [](const Range& r) {
        return format_number(r.lo) + ":" + format_number(r.hi) + ":" + format_number(r.step);
    };
    if (cfg.B_range) kv.emplace_back("B_range", range(*cfg.B_range));
    if (cfg.k_range) kv.emplace_back("k_range", range(*cfg.k_range));
    if (cfg.m_range) kv.emplace_back("m_range", range(*cfg.m_range));
    if (cfg.si_index) kv.emplace_back("a", format_number(*cfg.si_index));
    if (cfg.fault) kv.emplace_back("inject_fault", *cfg.fault);
    return kv;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Result& r, const RunConfig& cfg) {
    os << "# potalg " << POTALG_VERSION << "\n#";
    for (const auto& [key, value] : config_echo(cfg)) os << ' ' << key << '=' << value;
    os << '\n';

    bool first = true;
    auto sep = [&] {
        if (!first) os << ',';
        first = false;
    };
    for (const Column& c : r.columns) {
        if (c.kind == ColumnKind::Complex) {
            sep();
            os << "re_" << c.name;
            sep();
            os << "im_" << c.name;
        } else {
            sep();
            os << c.name;
        }
    }
    os << '\n';

    for (const auto& row : r.rows) {
        first = true;
        for (std::size_t i = 0; i < r.columns.size(); ++i) {
            const Value& v = row[i];
            const bool cx = r.columns[i].kind == ColumnKind::Complex;
            if (std::holds_alternative<std::monostate>(v)) {
                sep();
                if (cx) sep();
            } else if (const auto* z = std::get_if<std::complex<double>>(&v)) {
                sep();
                os << format_number(z->real());
                sep();
                os << format_number(z->imag());
            } else if (const auto* d = std::get_if<double>(&v)) {
                sep();
                os << format_number(*d);
                if (cx) {
                    sep();
                    os << "0";
                }
            } else if (const auto* n = std::get_if<std::int64_t>(&v)) {
                sep();
                os << *n;
            } else {
                sep();
                os << csv_escape(std::get<std::string>(v));
            }
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Result& r, const RunConfig& cfg) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = {{"name", "potalg"}, {"version", POTALG_VERSION}};
    ordered_json config = ordered_json::object();
    for (const auto& [key, value] : config_echo(cfg)) config[key] = value;
    doc["config"] = config;

    ordered_json cols = ordered_json::array();
    for (const Column& c : r.columns) {
        const char* kind = c.kind == ColumnKind::Real      ? "real"
                           : c.kind == ColumnKind::Complex ? "complex"
                           : c.kind == ColumnKind::Integer ? "integer"
                                                           : "text";
        cols.push_back({{"name", c.name}, {"kind", kind}});
    }
    doc["columns"] = cols;

    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < r.columns.size(); ++i) {
            const Value& v = row[i];
            const std::string& name = r.columns[i].name;
            if (std::holds_alternative<std::monostate>(v))
                obj[name] = nullptr;
            else if (const auto* z = std::get_if<std::complex<double>>(&v))
                obj[name] = {{"re", format_number(z->real())}, {"im", format_number(z->imag())}};
            else if (const auto* d = std::get_if<double>(&v)) {
                if (r.columns[i].kind == ColumnKind::Complex)
                    obj[name] = {{"re", format_number(*d)}, {"im", "0"}};
                else
                    obj[name] = format_number(*d);
            } else if (const auto* n = std::get_if<std::int64_t>(&v))
                obj[name] = std::to_string(*n);
            else
                obj[name] = std::get<std::string>(v);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = rows;
    doc["exit_status"] = r.exit_code;
    os << doc.dump(2) << '\n';
}

std::string render(const Result& r, const RunConfig& cfg) {
    std::ostringstream os;
    if (cfg.format == OutputFormat::Json)
        write_json(os, r, cfg);
    else
        write_csv(os, r, cfg);
    return os.str();
}

void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open '" + tmp.string() + "' for writing (output path '" + path + "')");
        f << content;
        f.flush();
        if (!f) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw Error("write failed for '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw Error("cannot move output into place at '" + path + "': " + ec.message());
    }
}

}  // namespace potalg::cli
