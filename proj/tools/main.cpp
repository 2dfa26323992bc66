// webster: command-line front end for the area-function estimation pipeline.
//
// Subcommands: estimate, ztrans, gen-horn, roundtrip, sweep.
// Human-facing flags use mm and kHz; all files are strictly SI (m, Hz).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "webster/io.hpp"
#include "webster/metrics.hpp"
#include "webster/pipeline.hpp"
#include "webster/signal_core.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace webster;

namespace {

struct PipeFlags {
    double f_lim_khz = 20.0;
    std::string f_cut = "auto";  // kHz or "auto"
    double f_sup_khz = 3500.0;
    std::string surge = "surge1";
    double geometric_area_mm2 = 0.0;
    double l_max_mm = 50.0;
    std::string termination = "epsilon";
    double fixed_termination_mm = 0.0;
    std::string interval;  // preset name or "lo,hi" in mm
    double rho = PhysicalConstants{}.rho;
    double c = PhysicalConstants{}.c;
    long long seed = -1;  // -1: env fallback, then 0
    unsigned legacy_nsup = 1;
    bool legacy_amp_corr = false;
    bool legacy_trev_add = false;
    bool window_off = false;
};

void add_pipe_flags(CLI::App* cmd, PipeFlags& pf) {
    cmd->add_option("--f-lim", pf.f_lim_khz, "highest measured frequency, kHz");
    cmd->add_option("--f-cut", pf.f_cut,
                    "window cutoff, kHz, or 'auto' (linear f_cut model)");
    cmd->add_option("--f-sup", pf.f_sup_khz, "synthesis rate, kHz");
    cmd->add_option("--surge", pf.surge, "surge1 | surge2 | geometric")
        ->check(CLI::IsMember({"surge1", "surge2", "geometric"}));
    cmd->add_option("--geometric-area-mm2", pf.geometric_area_mm2,
                    "entrance area for --surge geometric, mm^2");
    cmd->add_option("--l-max", pf.l_max_mm, "marching depth limit, mm");
    cmd->add_option("--termination", pf.termination,
                    "lme | epsilon | epsilon-corrected | tdrmax | "
                    "tdrmax-corrected | tdr50 | tdr50-corrected | fixed");
    cmd->add_option("--fixed-termination-mm", pf.fixed_termination_mm,
                    "length for --termination fixed, mm");
    cmd->add_option("--interval", pf.interval,
                    "termination search interval: preset name (entrance, "
                    "between-bends, second-bend, beyond-second-bend) or lo,hi in mm");
    cmd->add_option("--rho", pf.rho, "air density, kg/m^3");
    cmd->add_option("--c", pf.c, "speed of sound, m/s");
    cmd->add_option("--seed", pf.seed, "RNG seed (fallback: WEBSTER_INVERSE_SEED)");
    cmd->add_option("--legacy-nsup", pf.legacy_nsup, "integer upsampling factor");
    cmd->add_flag("--legacy-amp-corr", pf.legacy_amp_corr,
                  "multiply the reflectance by n_sup");
    cmd->add_flag("--legacy-trev-add", pf.legacy_trev_add,
                  "time-reversed addition of the TDR");
    cmd->add_flag("--window-off", pf.window_off,
                  "skip the Blackman window (round-trip diagnostics)");
}

TerminationRule parse_termination(const std::string& s) {
    if (s == "lme") return TerminationRule::Lme;
    if (s == "epsilon") return TerminationRule::Epsilon;
    if (s == "epsilon-corrected") return TerminationRule::EpsilonCorrected;
    if (s == "tdrmax") return TerminationRule::TdrMax;
    if (s == "tdrmax-corrected") return TerminationRule::TdrMaxCorrected;
    if (s == "tdr50") return TerminationRule::Tdr50;
    if (s == "tdr50-corrected") return TerminationRule::Tdr50Corrected;
    if (s == "fixed") return TerminationRule::Fixed;
    throw Error("InvalidConfig", "unknown termination rule: " + s);
}

PipelineConfig to_config(const PipeFlags& pf) {
    PipelineConfig cfg;
    cfg.f_lim = pf.f_lim_khz * 1e3;
    if (pf.f_cut != "auto") {
        try {
            cfg.f_cut = std::stod(pf.f_cut) * 1e3;
        } catch (const std::exception&) {
            throw Error("InvalidConfig", "--f-cut expects a number in kHz or 'auto'");
        }
    }
    cfg.f_sup = pf.f_sup_khz * 1e3;
    cfg.window_off = pf.window_off;
    if (pf.surge == "surge1") cfg.surge = SurgeVariant::Surge1;
    else if (pf.surge == "surge2") cfg.surge = SurgeVariant::Surge2;
    else cfg.surge = SurgeVariant::Geometric;
    cfg.geometric_area = pf.geometric_area_mm2 * 1e-6;
    cfg.l_max = pf.l_max_mm * 1e-3;
    cfg.termination = parse_termination(pf.termination);
    cfg.fixed_termination = pf.fixed_termination_mm * 1e-3;
    if (!pf.interval.empty()) {
        bool preset = false;
        for (const auto& p : kIntervalPresets) {
            if (pf.interval == p.name) {
                cfg.interval_lo = p.lo;
                cfg.interval_hi = p.hi;
                preset = true;
            }
        }
        if (!preset) {
            double lo, hi;
            char comma;
            std::istringstream is(pf.interval);
            if (!(is >> lo >> comma >> hi) || comma != ',')
                throw Error("InvalidConfig",
                            "--interval expects a preset name or lo,hi in mm");
            cfg.interval_lo = lo * 1e-3;
            cfg.interval_hi = hi * 1e-3;
        }
    }
    cfg.constants.rho = pf.rho;
    cfg.constants.c = pf.c;
    if (pf.seed >= 0) {
        cfg.seed = static_cast<std::uint64_t>(pf.seed);
    } else if (const char* env = std::getenv("WEBSTER_INVERSE_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
    cfg.legacy.n_sup = pf.legacy_nsup;
    cfg.legacy.amplitude_correction = pf.legacy_amp_corr;
    cfg.legacy.time_reversed_addition = pf.legacy_trev_add;
    return cfg;
}

json config_json(const PipelineConfig& cfg) {
    json j;
    j["f_lim_hz"] = cfg.f_lim;
    j["f_cut_hz"] = cfg.window_off ? cfg.f_sup / 2.0 : cfg.resolved_f_cut();
    j["f_cut_auto"] = !cfg.f_cut.has_value();
    j["f_sup_hz"] = cfg.f_sup;
    j["window_off"] = cfg.window_off;
    j["surge"] = cfg.surge == SurgeVariant::Surge1 ? "surge1"
                 : cfg.surge == SurgeVariant::Surge2 ? "surge2" : "geometric";
    j["geometric_area_m2"] = cfg.geometric_area;
    j["l_max_m"] = cfg.l_max;
    j["interval_m"] = {cfg.interval_lo, cfg.interval_hi};
    j["rho"] = cfg.constants.rho;
    j["c"] = cfg.constants.c;
    j["seed"] = cfg.seed;
    j["legacy"] = {{"n_sup", cfg.legacy.n_sup},
                   {"amplitude_correction", cfg.legacy.amplitude_correction},
                   {"time_reversed_addition", cfg.legacy.time_reversed_addition}};
    return j;
}

// ---- horn geometry flags -------------------------------------------------

struct ShapeFlags {
    std::string kind;
    double area_mm2 = 70.0;
    double length_mm = 25.0;
    double a0_mm2 = 40.0;
    double flare_per_m = 50.0;
    double r0_mm = 3.0;
    double r1_mm = 6.0;
    double aend_mm2 = 120.0;
    double apeak_mm2 = 90.0;
    double taper_start = 0.7;
    std::string stepped_config;
};

HornSpec parse_stepped_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileError", "cannot open " + path);
    SteppedTubes st;
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        double l_mm, d_mm;
        if (!(is >> l_mm)) continue;  // blank/comment line
        if (!(is >> d_mm))
            throw Error("ParseError", path + ":" + std::to_string(ln) +
                                          ": expected 'length_mm diameter_mm'");
        st.steps.push_back({l_mm * 1e-3, d_mm * 1e-3});
    }
    if (st.steps.empty()) throw Error("InvalidGeometry", "no steps in " + path);
    return st;
}

HornSpec to_spec(const ShapeFlags& sf) {
    if (sf.kind == "uniform")
        return UniformHorn{sf.area_mm2 * 1e-6, sf.length_mm * 1e-3};
    if (sf.kind == "exponential")
        return ExponentialHorn{sf.a0_mm2 * 1e-6, sf.flare_per_m, sf.length_mm * 1e-3};
    if (sf.kind == "conical")
        return ConicalHorn{sf.r0_mm * 1e-3, sf.r1_mm * 1e-3, sf.length_mm * 1e-3};
    if (sf.kind == "parabolic")
        return ParabolicHorn{sf.a0_mm2 * 1e-6, sf.aend_mm2 * 1e-6, sf.length_mm * 1e-3};
    if (sf.kind == "tapered")
        return TaperedParabolicHorn{sf.a0_mm2 * 1e-6, sf.apeak_mm2 * 1e-6,
                                    sf.aend_mm2 * 1e-6, sf.length_mm * 1e-3,
                                    sf.taper_start};
    if (sf.kind == "stepped") return parse_stepped_config(sf.stepped_config);
    throw Error("InvalidGeometry", "unknown shape: " + sf.kind);
}

// Registers one subcommand per horn family under `parent`.
void add_shape_commands(CLI::App* parent, ShapeFlags& sf,
                        std::vector<CLI::App*>& out) {
    auto* uni = parent->add_subcommand("uniform", "uniform tube");
    uni->add_option("--area-mm2", sf.area_mm2, "cross-section area, mm^2");
    uni->add_option("--length-mm", sf.length_mm, "length, mm");

    auto* exp = parent->add_subcommand("exponential", "exponential horn");
    exp->add_option("--a0-mm2", sf.a0_mm2, "entrance area, mm^2");
    exp->add_option("--flare-per-m", sf.flare_per_m, "flare rate m, 1/m");
    exp->add_option("--length-mm", sf.length_mm, "length, mm");

    auto* con = parent->add_subcommand("conical", "conical horn");
    con->add_option("--r0-mm", sf.r0_mm, "entrance radius, mm");
    con->add_option("--r1-mm", sf.r1_mm, "end radius, mm");
    con->add_option("--length-mm", sf.length_mm, "length, mm");

    auto* par = parent->add_subcommand("parabolic", "parabolic horn (area linear in x)");
    par->add_option("--a0-mm2", sf.a0_mm2, "entrance area, mm^2");
    par->add_option("--aend-mm2", sf.aend_mm2, "end area, mm^2");
    par->add_option("--length-mm", sf.length_mm, "length, mm");

    auto* tap = parent->add_subcommand("tapered", "tapered parabolic horn");
    tap->add_option("--a0-mm2", sf.a0_mm2, "entrance area, mm^2");
    tap->add_option("--apeak-mm2", sf.apeak_mm2, "peak area, mm^2");
    tap->add_option("--aend-mm2", sf.aend_mm2, "end area, mm^2");
    tap->add_option("--length-mm", sf.length_mm, "length, mm");
    tap->add_option("--taper-start", sf.taper_start, "taper onset, fraction of length");

    auto* stp = parent->add_subcommand("stepped", "stepped tube chain");
    stp->add_option("--config", sf.stepped_config,
                    "file with 'length_mm diameter_mm' lines")
        ->required();

    for (auto* c : {uni, exp, con, par, tap, stp}) {
        c->callback([c, &sf] { sf.kind = c->get_name(); });
        out.push_back(c);
    }
    parent->require_subcommand(1);
}

// Synthetic measurement band: FFT-grid bins of f_sup in (0, f_lim].
std::vector<double> band_frequencies(const PipelineConfig& cfg) {
    const FrequencyGrid g = make_grid(cfg.f_sup);
    std::vector<double> f;
    for (std::size_t n = 1; n < g.half_bins(); ++n) {
        const double fr = g.bin_freq(n);
        if (fr > cfg.f_lim) break;
        f.push_back(fr);
    }
    return f;
}

ImpedanceSpectrum synth_band_zec(const HornSpec& spec, const PipelineConfig& cfg) {
    auto z = synthesize_zec(spec, cfg.constants, band_frequencies(cfg));
    z.f_lim = cfg.f_lim;
    return z;
}

int run_estimate(const std::string& zec_path, const std::string& out_dir,
                 const PipeFlags& pf) {
    const PipelineConfig cfg = to_config(pf);
    const ImpedanceSpectrum z = read_impedance_csv(zec_path);
    const EstimateResult res = estimate(z, cfg);

    fs::create_directories(out_dir);
    write_area_csv(out_dir + "/area.csv", res.area);
    write_termination_json(out_dir + "/termination.json", res.termination);
    json jc = config_json(cfg);
    jc["degraded"] = res.degraded;
    jc["truncated"] = res.area.truncated;
    jc["clamp_events"] = res.area.clamp_events;
    write_diagnostics_json(out_dir + "/diagnostics.json", res.reflectance,
                           jc.dump(2));
    std::cout << "z0 " << format_si(res.reflectance.z0) << " Pa*s/m^3, "
              << res.area.areas.size() << " area samples"
              << (res.degraded ? " (degraded)" : "") << "\n";
    return res.degraded ? 2 : 0;
}

int run_ztrans(const std::string& zec_path, const std::string& area_path,
               double termination_mm, const std::string& out_path,
               const PipeFlags& pf) {
    const PipelineConfig cfg = to_config(pf);
    const ImpedanceSpectrum z = read_impedance_csv(zec_path);
    const AreaFunction af = read_area_csv(area_path);
    const TwoPortChain ch = chain(af, z.frequencies, cfg.constants, 0.1e-3,
                                  termination_mm * 1e-3);
    write_impedance_csv(out_path, transfer_impedance(ch, z));
    std::cout << "Z_trans at " << termination_mm << " mm -> " << out_path << "\n";
    return 0;
}

int run_genhorn(const ShapeFlags& sf, const std::string& out_dir,
                double ref_offset_mm, const PipeFlags& pf) {
    const PipelineConfig cfg = to_config(pf);
    const HornSpec spec = to_spec(sf);
    const double length = horn_length(spec);
    const double ref_len = length - ref_offset_mm * 1e-3;
    if (ref_len <= 0.0)
        throw Error("InvalidGeometry", "reference offset exceeds horn length");

    fs::create_directories(out_dir);
    write_area_csv(out_dir + "/area.csv", generate_area(spec, 0.1e-3));
    write_impedance_csv(out_dir + "/zec.csv", synth_band_zec(spec, cfg));
    auto z_ref = synthesize_ztrans_ref(spec, cfg.constants, evaluation_band(),
                                       ref_len);
    write_impedance_csv(out_dir + "/ztrans_ref.csv", z_ref);
    std::cout << sf.kind << ", L = " << length * 1e3 << " mm, reference plane "
              << ref_len * 1e3 << " mm -> " << out_dir << "\n";
    return 0;
}

int run_roundtrip(const ShapeFlags& sf, const std::string& out_path,
                  double ref_offset_mm, const PipeFlags& pf) {
    const PipelineConfig cfg = to_config(pf);
    const HornSpec spec = to_spec(sf);
    const double length = horn_length(spec);
    const double ref_len = length - ref_offset_mm * 1e-3;

    const ImpedanceSpectrum z_ec = synth_band_zec(spec, cfg);
    const ImpedanceSpectrum z_ref =
        synthesize_ztrans_ref(spec, cfg.constants, evaluation_band(), ref_len);
    const EstimateResult est = estimate(z_ec, cfg);

    std::optional<double> lme;
    LmeResult lr;
    if (cfg.termination == TerminationRule::Lme) {
        lr = find_l_lme(est.area, z_ec, z_ref, cfg.interval_lo, cfg.interval_hi,
                        cfg.constants);
        lme = lr.l_lme;
    }
    const double l_term = resolve_termination(cfg, est.termination, lme);
    const TwoPortChain ch =
        chain(est.area, z_ec.frequencies, cfg.constants, 0.1e-3, l_term);
    const ErrorReport rep = rms_errors(transfer_impedance(ch, z_ec), z_ref);

    // Interior diameter deviation: one window smear length off each end.
    const double f_cut = cfg.window_off ? cfg.f_sup / 2.0 : cfg.resolved_f_cut();
    const double smear = cfg.constants.c / (2.0 * f_cut);
    double worst = 0.0, worst_x = 0.0;
    for (double x = smear; x <= length - smear; x += 0.5e-3) {
        const double dev =
            std::sqrt(est.area.area_at(x) / horn_area(spec, x)) - 1.0;
        if (std::abs(dev) > std::abs(worst)) {
            worst = dev;
            worst_x = x;
        }
    }

    json j;
    j["config"] = config_json(cfg);
    j["shape"] = sf.kind;
    j["true_length_m"] = length;
    j["reference_plane_m"] = ref_len;
    j["termination_m"] = l_term;
    if (lme) j["l_lme_m"] = *lme;
    j["z0"] = est.reflectance.z0;
    j["L_rmse_db"] = rep.l_rmse_db;
    j["theta_rmse_deg"] = rep.theta_rmse_deg;
    j["n_f"] = rep.n_f;
    j["worst_interior_diameter_dev"] = worst;
    j["worst_interior_diameter_x_m"] = worst_x;
    j["degraded"] = est.degraded;
    std::ofstream out(out_path);
    if (!out) throw Error("FileError", "cannot write " + out_path);
    out << j.dump(2) << "\n";

    std::cout << sf.kind << ": L_rmse " << rep.l_rmse_db << " dB, theta_rmse "
              << rep.theta_rmse_deg << " deg at " << l_term * 1e3
              << " mm; worst interior diameter dev "
              << worst * 100.0 << " %\n";
    return est.degraded ? 2 : 0;
}

std::vector<double> parse_grid_khz(const std::string& s) {
    // "a:step:b" inclusive range or comma-separated list, kHz.
    std::vector<double> g;
    if (s.find(':') != std::string::npos) {
        double a, st, b;
        char c1, c2;
        std::istringstream is(s);
        if (!(is >> a >> c1 >> st >> c2 >> b) || c1 != ':' || c2 != ':' ||
            !(st > 0.0))
            throw Error("InvalidConfig", "grid expects a:step:b or a,b,c (kHz)");
        for (double v = a; v <= b + 1e-9; v += st) g.push_back(v * 1e3);
    } else {
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty()) g.push_back(std::stod(tok) * 1e3);
    }
    if (g.empty()) throw Error("InvalidConfig", "empty grid: " + s);
    return g;
}

int run_sweep(const std::string& dataset_dir, const std::string& out_dir,
              const std::string& fcut_grid, const std::string& fsup_grid,
              unsigned parallel, const PipeFlags& pf) {
    const PipelineConfig cfg = to_config(pf);
    std::vector<SweepItem> items;
    std::vector<fs::path> zec_files;
    for (const auto& e : fs::directory_iterator(dataset_dir)) {
        const auto name = e.path().filename().string();
        if (name.size() > 8 && name.ends_with("_zec.csv"))
            zec_files.push_back(e.path());
    }
    std::sort(zec_files.begin(), zec_files.end());
    for (const auto& p : zec_files) {
        SweepItem it;
        it.id = p.filename().string();
        it.id.erase(it.id.size() - 8);
        const auto ref = p.parent_path() / (it.id + "_ztrans.csv");
        if (!fs::exists(ref))
            throw Error("FileError", "missing reference " + ref.string());
        it.z_ec = read_impedance_csv(p.string());
        it.z_trans_ref = read_impedance_csv(ref.string());
        it.interval_lo = cfg.interval_lo;
        it.interval_hi = cfg.interval_hi;
        items.push_back(std::move(it));
    }
    if (items.empty())
        throw Error("FileError", "no *_zec.csv items in " + dataset_dir);

    const CalibrationRecord rec =
        sweep(items, parse_grid_khz(fcut_grid), parse_grid_khz(fsup_grid),
              cfg.f_lim, cfg, parallel);
    fs::create_directories(out_dir);
    write_sweep_csv(out_dir + "/sweep_long.csv", out_dir + "/sweep_matrix.csv",
                    rec, cfg.f_lim);
    std::cout << items.size() << " items x " << rec.f_cut_grid.size() << " f_cut x "
              << rec.f_sup_grid.size() << " f_sup -> " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Area-function estimation from band-limited input impedance"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override");

    PipeFlags pf;
    ShapeFlags sf;
    std::string zec_path, area_path, out_dir = "out", out_path;
    double termination_mm = 0.0, ref_offset_mm = 0.0;
    std::string fcut_grid = "8:1:44", fsup_grid = "3500";
    unsigned parallel = 1;

    auto* est = app.add_subcommand("estimate",
                                   "area function from an impedance CSV");
    est->add_option("--zec", zec_path, "input impedance CSV")->required();
    est->add_option("--out-dir", out_dir, "output directory");
    add_pipe_flags(est, pf);

    auto* ztr = app.add_subcommand("ztrans",
                                   "transfer impedance from a prior estimate");
    ztr->add_option("--zec", zec_path, "input impedance CSV")->required();
    ztr->add_option("--area", area_path, "area CSV")->required();
    ztr->add_option("--termination-mm", termination_mm, "truncation length, mm")
        ->required();
    ztr->add_option("--out", out_path, "output CSV")->required();
    add_pipe_flags(ztr, pf);

    auto* gen = app.add_subcommand("gen-horn", "synthetic ground truth files");
    gen->add_option("--out-dir", out_dir, "output directory");
    gen->add_option("--ref-offset-mm", ref_offset_mm,
                    "reference plane offset lateral of the end, mm");
    add_pipe_flags(gen, pf);
    std::vector<CLI::App*> gen_shapes;
    add_shape_commands(gen, sf, gen_shapes);

    auto* rt = app.add_subcommand("roundtrip",
                                  "synthesize, estimate and score one horn");
    rt->add_option("--out", out_path, "report JSON path");
    rt->add_option("--ref-offset-mm", ref_offset_mm,
                   "reference plane offset lateral of the end, mm");
    add_pipe_flags(rt, pf);
    std::vector<CLI::App*> rt_shapes;
    add_shape_commands(rt, sf, rt_shapes);

    auto* sw = app.add_subcommand("sweep", "parameter sweep over a dataset");
    sw->add_option("--dataset", zec_path, "directory with *_zec.csv/*_ztrans.csv")
        ->required();
    sw->add_option("--out-dir", out_dir, "output directory");
    sw->add_option("--f-cut-grid", fcut_grid, "kHz, a:step:b or list");
    sw->add_option("--f-sup-grid", fsup_grid, "kHz, a:step:b or list");
    sw->add_option("--parallel", parallel, "worker threads");
    add_pipe_flags(sw, pf);

    // roundtrip defaults to the least-mean-error termination (reference known)
    rt->preparse_callback([&](std::size_t) { pf.termination = "lme"; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (*est) return run_estimate(zec_path, out_dir, pf);
        if (*ztr) return run_ztrans(zec_path, area_path, termination_mm, out_path, pf);
        if (*gen) return run_genhorn(sf, out_dir, ref_offset_mm, pf);
        if (*rt) {
            if (out_path.empty()) out_path = "roundtrip.json";
            return run_roundtrip(sf, out_path, ref_offset_mm, pf);
        }
        if (*sw) return run_sweep(zec_path, out_dir, fcut_grid, fsup_grid,
                                  parallel, pf);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
