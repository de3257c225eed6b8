#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xxz/errors.hpp"
#include "xxz/model.hpp"

namespace xxz {

struct Estimators {
    bool ed = true;
    bool finite = true;
    bool product = true;
    bool thermo = true;
};

struct RowOptions {
    Estimators which;
    double tol = 1e-11;
    bool extended = false;
    int ed_cap = 16;
};

struct ResultRow {
    int L = 0;
    double zeta = 0.0, h_plus = 0.0, h1_minus = 0.0, h2_minus = 0.0;
    std::optional<double> s_ed, s_finite, s_product, s_thermo;
    std::string case_path;
    double residual_max = 0.0;
    double wall_time_ms = 0.0;
    std::string error;                    // first failure, empty if none
    std::optional<ErrorCode> error_code;  // of that failure
    std::vector<std::string> warnings;
};

// Estimators failing individually leave their column empty and fill `error`; the rest still run.
ResultRow compute_row(int L, double zeta, double h_plus, double h1_minus, double h2_minus, const RowOptions& opt);

enum class SweptField { h1_minus, h2_minus };

struct SweepSpec {
    double zeta = 0.0, h_plus = 0.0;
    double fixed_minus = 0.0;  // the h^- that is not swept
    SweptField swept = SweptField::h2_minus;
    std::vector<double> grid;
    std::vector<int> lengths;
    RowOptions options;
    int jobs = 0;  // 0: hardware concurrency
};

// Throws Domain on an empty or unsorted grid or on mixed-parity lengths.
void validate(const SweepSpec& s);
// Rows ordered by length, then grid point.
std::vector<ResultRow> run_sweep(const SweepSpec& s);

// "a:b:step", inclusive of b within step/1e6
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_lengths(const std::string& text);

struct ConvergeSummary {
    std::vector<double> gaps;    // |s_finite - s_thermo| per row, NaN where unavailable
    std::vector<double> ratios;  // gap[k+1]/gap[k]
    bool monotone = true;
    double decay_ratio = 0.0;    // geometric mean of ratios
};
ConvergeSummary summarize_convergence(const std::vector<ResultRow>& rows);

inline constexpr const char* kCsvHeader = "# xxz-overlap v1";
// timing = false leaves wall_time_ms empty so reruns are byte-identical.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool timing = true);
std::string rows_to_json(const std::vector<ResultRow>& rows, const RowOptions& opt, bool timing = true,
                         const ConvergeSummary* conv = nullptr);

// Fast invariant suite behind `xxz-overlap selftest`; one line per check, false on any failure.
bool run_selftest(std::ostream& os);

}  // namespace xxz
