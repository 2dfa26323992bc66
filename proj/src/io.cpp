#include "webster/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace webster {

using nlohmann::json;

std::string format_si(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("FileError", "cannot open " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // LF endings everywhere
    if (!f) throw Error("FileError", "cannot write " + path);
    return f;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

double parse_double(const std::string& s, const std::string& path, int lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing chars");
        return v;
    } catch (const std::exception&) {
        throw Error("ParseError", path + ":" + std::to_string(lineno) +
                                      ": bad number '" + s + "'");
    }
}

}  // namespace

ImpedanceSpectrum read_impedance_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    int lineno = 0;
    ImpedanceSpectrum z;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("frequency_hz", 0) == 0) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw Error("ParseError", path + ":" + std::to_string(lineno) +
                                          ": expected 3 columns");
        const double fr = parse_double(fields[0], path, lineno);
        const double re = parse_double(fields[1], path, lineno);
        const double im = parse_double(fields[2], path, lineno);
        if (!z.frequencies.empty() && fr <= z.frequencies.back())
            throw Error("NonIncreasingFrequencies",
                        path + ":" + std::to_string(lineno) +
                            ": frequencies must be strictly increasing");
        z.frequencies.push_back(fr);
        z.values.emplace_back(re, im);
    }
    if (z.frequencies.empty()) throw Error("EmptySpectrum", path + ": no rows");
    z.f_lim = z.frequencies.back();
    z.validate();
    return z;
}

void write_impedance_csv(const std::string& path, const ImpedanceSpectrum& z) {
    auto f = open_out(path);
    f << "frequency_hz,real,imag\n";
    for (std::size_t i = 0; i < z.frequencies.size(); ++i)
        f << format_si(z.frequencies[i]) << ',' << format_si(z.values[i].real())
          << ',' << format_si(z.values[i].imag()) << '\n';
}

AreaFunction read_area_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    int lineno = 0;
    std::vector<double> xs, areas;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("x_m", 0) == 0) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw Error("ParseError", path + ":" + std::to_string(lineno) +
                                          ": expected 2 columns");
        xs.push_back(parse_double(fields[0], path, lineno));
        areas.push_back(parse_double(fields[1], path, lineno));
    }
    if (areas.size() < 2) throw Error("EmptyAreaFunction", path + ": too few rows");
    AreaFunction af;
    af.dx = xs[1] - xs[0];
    if (!(af.dx > 0.0)) throw Error("ParseError", path + ": x must increase");
    af.areas = std::move(areas);
    af.epsilon.resize(af.areas.size() - 1);
    for (std::size_t i = 0; i + 1 < af.areas.size(); ++i)
        af.epsilon[i] = std::log(af.areas[i + 1] / af.areas[i]) / (2.0 * af.dx);
    return af;
}

void write_area_csv(const std::string& path, const AreaFunction& af) {
    auto f = open_out(path);
    f << "x_m,area_m2\n";
    for (std::size_t i = 0; i < af.areas.size(); ++i)
        f << format_si(static_cast<double>(i) * af.dx) << ','
          << format_si(af.areas[i]) << '\n';
}

namespace {
json opt_len(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}
}  // namespace

void write_termination_json(const std::string& path, const TerminationReport& rep) {
    json j;
    j["interval_m"] = {rep.interval_lo, rep.interval_hi};
    j["l_tdrmax_m"] = opt_len(rep.l_tdrmax);
    j["l_tdr50_m"] = opt_len(rep.l_tdr50);
    j["l_epsilon_m"] = opt_len(rep.l_epsilon);
    j["l_quarter_m"] = opt_len(rep.l_quarter);
    j["l_epsilon_corrected_m"] = opt_len(rep.l_epsilon_corrected);
    j["l_tdrmax_corrected_m"] = opt_len(rep.l_tdrmax_corrected);
    j["l_tdr50_corrected_m"] = opt_len(rep.l_tdr50_corrected);
    j["l_tdr50_found"] = rep.l_tdr50.has_value();
    open_out(path) << j.dump(2) << '\n';
}

void write_diagnostics_json(const std::string& path, const ReflectanceState& st,
                            const std::string& resolved_config_json) {
    json j;
    j["z0"] = st.z0;
    j["eta"] = st.eta;
    j["converged"] = st.converged;
    j["window"] = {{"a", st.window.a},
                   {"f_cut_hz", st.window.f_cut},
                   {"f_sup_hz", st.window.f_sup},
                   {"n_fft", st.window.n_fft},
                   {"off", st.window.off}};
    json trace = json::array();
    for (const auto& it : st.surge_trace)
        trace.push_back({{"k", it.k}, {"z0", it.z0}, {"ratio", it.ratio}});
    j["surge_trace"] = trace;
    j["tdr"] = {{"dt_s", st.tdr.dt}, {"samples", st.tdr.samples}};
    j["config"] = json::parse(resolved_config_json);
    open_out(path) << j.dump(2) << '\n';
}

void write_error_report_json(const std::string& path, const ErrorReport& rep) {
    json j;
    j["l_rmse_db"] = rep.l_rmse_db;
    j["theta_rmse_deg"] = rep.theta_rmse_deg;
    j["n_f"] = rep.n_f;
    j["level_error_db"] = rep.level_error_db;
    open_out(path) << j.dump(2) << '\n';
}

void write_sweep_csv(const std::string& long_path, const std::string& matrix_path,
                     const CalibrationRecord& rec, double f_lim) {
    {
        auto f = open_out(long_path);
        f << "f_sup_hz,f_cut_hz,f_lim_hz,item_id,L_lme_db,theta_lme_deg\n";
        for (const auto& c : rec.cells) {
            f << format_si(c.f_sup) << ',' << format_si(c.f_cut) << ','
              << format_si(f_lim) << ',' << c.item_id << ',';
            if (c.ok)
                f << format_si(c.l_lme_db) << ',' << format_si(c.theta_lme_deg);
            else
                f << "nan,nan";
            f << '\n';
        }
    }
    {
        auto f = open_out(matrix_path);
        f << "f_sup_hz";
        for (const double fc : rec.f_cut_grid) f << ',' << format_si(fc);
        f << '\n';
        for (std::size_t si = 0; si < rec.f_sup_grid.size(); ++si) {
            f << format_si(rec.f_sup_grid[si]);
            for (std::size_t ci = 0; ci < rec.f_cut_grid.size(); ++ci)
                f << ',' << format_si(rec.l_mlme_db[si][ci]);
            f << '\n';
        }
    }
}

}  // namespace webster
