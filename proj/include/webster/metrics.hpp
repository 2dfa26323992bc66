#ifndef WEBSTER_METRICS_HPP
#define WEBSTER_METRICS_HPP

#include <cstdint>
#include <functional>

#include "webster/config.hpp"
#include "webster/inverse.hpp"
#include "webster/twoport.hpp"
#include "webster/types.hpp"

namespace webster {

// 1-10 kHz in 100 Hz steps, 91 points. The comparison band for all metrics.
std::vector<double> evaluation_band();

struct ErrorReport {
    double l_rmse_db = 0.0;
    double theta_rmse_deg = 0.0;
    std::vector<double> level_error_db;  // per evaluation-band frequency
    std::size_t n_f = 0;
};

// Eq.-style rms level/phase errors over the 1-10 kHz band; inputs are
// resampled onto the band by linear interpolation when needed.
ErrorReport rms_errors(const ImpedanceSpectrum& z_mod,
                       const ImpedanceSpectrum& z_ref);

struct LmeResult {
    double l_lme = 0.0;  // m
    double l_rmse_db = 0.0;
    double theta_rmse_deg = 0.0;
    std::vector<double> candidates;  // m
    std::vector<double> curve;       // L_rmse per candidate, dB
};

// Scans candidate termination lengths (0.1 mm steps across the interval),
// feeding each truncated area function to the two-port model and comparing
// the predicted Z_trans to the reference. Smallest x wins ties.
LmeResult find_l_lme(const AreaFunction& af, const ImpedanceSpectrum& z_ec,
                     const ImpedanceSpectrum& z_trans_ref,
                     double interval_lo, double interval_hi,
                     const PhysicalConstants& constants);

// f_cut = 1.05 * f_lim + 6.88 kHz.
double fcut_model(double f_lim);

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;  // Hz
    double r_squared = 0.0;
};
RegressionFit fit_fcut_regression(
    const std::vector<std::pair<double, double>>& points);

struct SweepItem {
    std::string id;
    ImpedanceSpectrum z_ec;
    ImpedanceSpectrum z_trans_ref;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
};

struct SweepCell {
    double f_sup = 0.0;
    double f_cut = 0.0;
    std::string item_id;
    bool ok = false;
    double l_lme_db = 0.0;
    double theta_lme_deg = 0.0;
};

struct CalibrationRecord {
    double f_lim = 0.0;
    std::vector<double> f_cut_grid;
    std::vector<double> f_sup_grid;
    std::vector<SweepCell> cells;  // long format, grid-major then item
    // Aggregated matrices, indexed [sup][cut]; NaN marks an all-failed cell.
    std::vector<std::vector<double>> l_mlme_db;
    std::vector<std::vector<double>> theta_mlme_deg;
};

CalibrationRecord sweep(const std::vector<SweepItem>& dataset,
                        const std::vector<double>& f_cut_grid,
                        const std::vector<double>& f_sup_grid, double f_lim,
                        const PipelineConfig& base_cfg, unsigned parallel = 1);

struct CrossValidationResult {
    std::vector<double> slopes;
    std::vector<double> intercepts;    // Hz
    std::vector<double> mean_errors;   // Hz, test-set f_cut prediction error
};

// Repeated random train/test subject splits; per split the per-group means
// are aggregated per f_lim, a line fitted on the train means and evaluated
// on the test means. `samples[g]` holds a subject's (f_lim, optimal f_cut)
// pairs.
CrossValidationResult cross_validate(
    const std::vector<std::vector<std::pair<double, double>>>& samples,
    std::size_t iterations, std::size_t train_count, std::uint64_t seed);

}  // namespace webster

#endif
