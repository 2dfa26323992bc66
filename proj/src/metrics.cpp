#include "webster/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>

#include "webster/pipeline.hpp"
#include "webster/signal_core.hpp"

namespace webster {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLmeStep = 0.1e-3;  // m, candidate spacing
}  // namespace

std::vector<double> evaluation_band() {
    std::vector<double> f;
    f.reserve(91);
    for (int k = 10; k <= 100; ++k) f.push_back(100.0 * k);
    return f;
}

namespace {

std::vector<Complex> resample_to_band(const ImpedanceSpectrum& z,
                                      const std::vector<double>& band) {
    z.validate();
    if (z.frequencies.front() > band.front() + 1e-9 ||
        z.frequencies.back() < band.back() - 1e-9)
        throw Error("GridMismatch", "spectrum does not cover 1-10 kHz");
    std::vector<Complex> out(band.size());
    for (std::size_t i = 0; i < band.size(); ++i) out[i] = z.interp(band[i]);
    return out;
}

}  // namespace

ErrorReport rms_errors(const ImpedanceSpectrum& z_mod,
                       const ImpedanceSpectrum& z_ref) {
    const auto band = evaluation_band();
    const auto m = resample_to_band(z_mod, band);
    const auto r = resample_to_band(z_ref, band);

    ErrorReport rep;
    rep.n_f = band.size();
    rep.level_error_db.resize(band.size());
    double sum_l2 = 0.0;
    double sum_p2 = 0.0;
    for (std::size_t i = 0; i < band.size(); ++i) {
        const Complex ratio = m[i] / r[i];
        const double ldb = 20.0 * std::log10(std::abs(ratio));
        const double ph = std::arg(ratio);  // principal value
        rep.level_error_db[i] = ldb;
        sum_l2 += ldb * ldb;
        sum_p2 += ph * ph;
    }
    rep.l_rmse_db = std::sqrt(sum_l2 / static_cast<double>(band.size()));
    rep.theta_rmse_deg =
        std::sqrt(sum_p2 / static_cast<double>(band.size())) * 180.0 / kPi;
    return rep;
}

LmeResult find_l_lme(const AreaFunction& af, const ImpedanceSpectrum& z_ec,
                     const ImpedanceSpectrum& z_trans_ref,
                     double interval_lo, double interval_hi,
                     const PhysicalConstants& constants) {
    if (!(interval_hi >= interval_lo))
        throw Error("EmptyInterval", "l_lme interval is empty");
    const auto band = evaluation_band();
    ImpedanceSpectrum z_ec_band;
    z_ec_band.frequencies = band;
    z_ec_band.values = resample_to_band(z_ec, band);
    z_ec_band.f_lim = band.back();

    const double hi = std::min(interval_hi, af.length());
    LmeResult res;
    for (double x = std::max(interval_lo, kLmeStep); x <= hi + 1e-12;
         x += kLmeStep) {
        const auto ch = chain(af, band, constants, kLmeStep, x);
        const auto zt = transfer_impedance(ch, z_ec_band);
        const auto err = rms_errors(zt, z_trans_ref);
        res.candidates.push_back(x);
        res.curve.push_back(err.l_rmse_db);
        if (res.candidates.size() == 1 || err.l_rmse_db < res.l_rmse_db) {
            res.l_lme = x;
            res.l_rmse_db = err.l_rmse_db;
            res.theta_rmse_deg = err.theta_rmse_deg;
        }
    }
    if (res.candidates.empty())
        throw Error("EmptyInterval", "no l_lme candidates inside the area extent");
    return res;
}

double fcut_model(double f_lim) {
    if (!(f_lim > 0.0)) throw Error("InvalidConfig", "f_lim must be > 0");
    return 1.05 * f_lim + 6.88e3;
}

RegressionFit fit_fcut_regression(
    const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw Error("DegenerateFit", "need at least 2 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw Error("DegenerateFit", "all f_lim values equal");
    RegressionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
        const double e = y - (fit.slope * x + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

namespace {

SweepCell run_sweep_cell(const SweepItem& item, double f_sup, double f_cut,
                         double f_lim, const PipelineConfig& base_cfg) {
    SweepCell cell;
    cell.f_sup = f_sup;
    cell.f_cut = f_cut;
    cell.item_id = item.id;
    try {
        PipelineConfig cfg = base_cfg;
        cfg.f_sup = f_sup;
        cfg.f_cut = f_cut;
        cfg.f_lim = f_lim;
        cfg.interval_lo = item.interval_lo;
        cfg.interval_hi = item.interval_hi;
        const auto est = estimate(item.z_ec, cfg);
        const auto lme =
            find_l_lme(est.area, item.z_ec, item.z_trans_ref, item.interval_lo,
                       item.interval_hi, cfg.constants);
        cell.ok = true;
        cell.l_lme_db = lme.l_rmse_db;
        cell.theta_lme_deg = lme.theta_rmse_deg;
    } catch (const Error&) {
        cell.ok = false;  // flagged hole, the sweep keeps going
    }
    return cell;
}

}  // namespace

CalibrationRecord sweep(const std::vector<SweepItem>& dataset,
                        const std::vector<double>& f_cut_grid,
                        const std::vector<double>& f_sup_grid, double f_lim,
                        const PipelineConfig& base_cfg, unsigned parallel) {
    if (dataset.empty() || f_cut_grid.empty() || f_sup_grid.empty())
        throw Error("InvalidConfig", "sweep needs a dataset and non-empty grids");

    CalibrationRecord rec;
    rec.f_lim = f_lim;
    rec.f_cut_grid = f_cut_grid;
    rec.f_sup_grid = f_sup_grid;

    struct Job {
        std::size_t si, ci, ii;
    };
    std::vector<Job> jobs;
    for (std::size_t si = 0; si < f_sup_grid.size(); ++si)
        for (std::size_t ci = 0; ci < f_cut_grid.size(); ++ci)
            for (std::size_t ii = 0; ii < dataset.size(); ++ii)
                jobs.push_back({si, ci, ii});

    std::vector<SweepCell> cells(jobs.size());
    const unsigned workers = std::max(1u, parallel);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) break;
            const auto& job = jobs[j];
            cells[j] = run_sweep_cell(dataset[job.ii], f_sup_grid[job.si],
                                      f_cut_grid[job.ci], f_lim, base_cfg);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::future<void>> futs;
        for (unsigned w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }
    rec.cells = std::move(cells);

    rec.l_mlme_db.assign(f_sup_grid.size(),
                         std::vector<double>(f_cut_grid.size(), 0.0));
    rec.theta_mlme_deg = rec.l_mlme_db;
    for (std::size_t si = 0; si < f_sup_grid.size(); ++si) {
        for (std::size_t ci = 0; ci < f_cut_grid.size(); ++ci) {
            double sl = 0.0, sp = 0.0;
            std::size_t n = 0;
            for (std::size_t ii = 0; ii < dataset.size(); ++ii) {
                const auto& c =
                    rec.cells[(si * f_cut_grid.size() + ci) * dataset.size() + ii];
                if (!c.ok) continue;
                sl += c.l_lme_db;
                sp += c.theta_lme_deg;
                ++n;
            }
            const double nn = static_cast<double>(n);
            rec.l_mlme_db[si][ci] =
                n ? sl / nn : std::numeric_limits<double>::quiet_NaN();
            rec.theta_mlme_deg[si][ci] =
                n ? sp / nn : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return rec;
}

namespace {

// Per-f_lim mean of the optimal f_cut over a set of subjects.
std::vector<std::pair<double, double>> group_means(
    const std::vector<std::vector<std::pair<double, double>>>& samples,
    const std::vector<std::size_t>& subjects) {
    std::vector<double> flims;
    for (const auto s : subjects)
        for (const auto& [fl, fc] : samples[s])
            if (std::find(flims.begin(), flims.end(), fl) == flims.end())
                flims.push_back(fl);
    std::sort(flims.begin(), flims.end());

    std::vector<std::pair<double, double>> means;
    for (const double fl : flims) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto s : subjects)
            for (const auto& [f, fc] : samples[s])
                if (f == fl) {
                    sum += fc;
                    ++n;
                }
        if (n) means.emplace_back(fl, sum / static_cast<double>(n));
    }
    return means;
}

}  // namespace

CrossValidationResult cross_validate(
    const std::vector<std::vector<std::pair<double, double>>>& samples,
    std::size_t iterations, std::size_t train_count, std::uint64_t seed) {
    if (samples.size() < train_count + 1)
        throw Error("InsufficientGroups", "need train_count + 1 groups");

    std::mt19937_64 rng(seed);
    CrossValidationResult res;
    res.slopes.reserve(iterations);
    res.intercepts.reserve(iterations);
    res.mean_errors.reserve(iterations);

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);

    for (std::size_t it = 0; it < iterations; ++it) {
        std::shuffle(order.begin(), order.end(), rng);
        const std::vector<std::size_t> train(order.begin(),
                                             order.begin() + train_count);
        const std::vector<std::size_t> test(order.begin() + train_count,
                                            order.end());
        const auto fit = fit_fcut_regression(group_means(samples, train));
        const auto test_means = group_means(samples, test);
        double err = 0.0;
        for (const auto& [fl, fc] : test_means)
            err += (fit.slope * fl + fit.intercept) - fc;
        err /= static_cast<double>(test_means.size());
        res.slopes.push_back(fit.slope);
        res.intercepts.push_back(fit.intercept);
        res.mean_errors.push_back(err);
    }
    return res;
}

}  // namespace webster
