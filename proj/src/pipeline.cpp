#include "xxz/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "xxz/bethe.hpp"
#include "xxz/ed.hpp"
#include "xxz/overlap.hpp"
#include "xxz/thermo.hpp"

namespace xxz {

namespace {

void note_error(ResultRow& r, const char* stage, const std::exception& e) {
    if (!r.error.empty()) return;
    r.error = std::string(stage) + ": " + e.what();
    if (auto* xe = dynamic_cast<const Error*>(&e)) r.error_code = xe->code();
}

template <class F>
void attempt(ResultRow& r, const char* stage, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        note_error(r, stage, e);
    }
}

}  // namespace

ResultRow compute_row(int L, double zeta, double h_plus, double h1_minus, double h2_minus, const RowOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRow r;
    r.L = L;
    r.zeta = zeta;
    r.h_plus = h_plus;
    r.h1_minus = h1_minus;
    r.h2_minus = h2_minus;
    const ChainParams p1{L, zeta, h1_minus, h_plus}, p2{L, zeta, h2_minus, h_plus};

    // case_path is filled even when s_thermo is not requested
    attempt(r, "thermo", [&] {
        const ThermoOverlap t = overlap_thermo(p1, p2);
        r.case_path = to_string(t.case_path);
        if (opt.which.thermo) r.s_thermo = t.value;
    });

    if (opt.which.finite || opt.which.product) {
        attempt(r, "bethe", [&] {
            SolverOptions so;
            so.tol = opt.tol;
            const BetheRoots b1 = solve_ground_state(p1, so);
            const BetheRoots b2 = solve_ground_state(p2, so);
            r.residual_max = std::max(b1.residual_max, b2.residual_max);
            for (const auto* b : {&b1, &b2})
                for (const auto& w : b->warnings) r.warnings.push_back(w);
            if (opt.which.finite) attempt(r, "finite", [&] {
                r.s_finite = overlap_normalized(b1, b2, opt.extended).value;
            });
            if (opt.which.product) attempt(r, "product", [&] { r.s_product = overlap_product_form(b1, b2); });
        });
    }

    if (opt.which.ed && L <= opt.ed_cap) {
        attempt(r, "ed", [&] {
            const EdOverlap e = ed_overlap(p1, p2, opt.ed_cap);
            r.s_ed = e.value;
            for (const auto& w : e.warnings) r.warnings.push_back(w);
        });
    }

    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void validate(const SweepSpec& s) {
    if (s.grid.empty()) throw Error(ErrorCode::Domain, "empty grid");
    if (!std::is_sorted(s.grid.begin(), s.grid.end())) throw Error(ErrorCode::Domain, "grid must be ascending");
    if (s.lengths.empty()) throw Error(ErrorCode::Domain, "no lengths");
    for (int L : s.lengths) {
        if (L < 2) throw Error(ErrorCode::Domain, "L must be at least 2");
        if (L % 2 != s.lengths.front() % 2) throw Error(ErrorCode::Domain, "lengths must share parity");
    }
}

std::vector<ResultRow> run_sweep(const SweepSpec& s) {
    validate(s);
    struct Task {
        int L;
        double h1, h2;
    };
    std::vector<Task> tasks;
    for (int L : s.lengths)
        for (double x : s.grid)
            tasks.push_back(s.swept == SweptField::h2_minus ? Task{L, s.fixed_minus, x} : Task{L, x, s.fixed_minus});

    std::vector<ResultRow> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();)
            out[i] = compute_row(tasks[i].L, s.zeta, s.h_plus, tasks[i].h1, tasks[i].h2, s.options);
    };
    unsigned n = s.jobs > 0 ? unsigned(s.jobs) : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, unsigned(tasks.size()));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    double a, b, step;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
        throw Error(ErrorCode::Domain, "grid must look like start:stop:step");
    if (!(step > 0.0) || b < a) throw Error(ErrorCode::Domain, "grid needs step > 0 and stop >= start");
    std::vector<double> g;
    const long n = std::lround(std::floor((b - a) / step + 1e-6));
    for (long k = 0; k <= n; ++k) g.push_back(a + double(k) * step);
    return g;
}

std::vector<int> parse_lengths(const std::string& text) {
    std::vector<int> v;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        std::size_t used = 0;
        int L = 0;
        try {
            L = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw Error(ErrorCode::Domain, "bad length '" + item + "'");
        v.push_back(L);
    }
    if (v.empty()) throw Error(ErrorCode::Domain, "no lengths");
    return v;
}

ConvergeSummary summarize_convergence(const std::vector<ResultRow>& rows) {
    ConvergeSummary c;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rows)
        c.gaps.push_back(r.s_finite && r.s_thermo ? std::abs(*r.s_finite - *r.s_thermo) : nan);
    double log_sum = 0.0;
    int used = 0;
    for (std::size_t k = 1; k < c.gaps.size(); ++k) {
        const double ratio = c.gaps[k] / c.gaps[k - 1];
        c.ratios.push_back(ratio);
        if (!(ratio < 1.0)) c.monotone = false;
        if (std::isfinite(ratio) && ratio > 0.0) {
            log_sum += std::log(ratio);
            ++used;
        }
    }
    c.decay_ratio = used ? std::exp(log_sum / used) : nan;
    return c;
}

namespace {

std::string num(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

std::string num(double v) { return num(std::optional<double>(v)); }

std::string clean(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
    return s;
}

nlohmann::json opt_json(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool timing) {
    os << kCsvHeader << '\n'
       << "L,zeta,h_plus,h1_minus,h2_minus,s_ed,s_finite,s_product,s_thermo,case_path,residual_max,wall_time_ms,error\n";
    for (const auto& r : rows) {
        os << r.L << ',' << num(r.zeta) << ',' << num(r.h_plus) << ',' << num(r.h1_minus) << ',' << num(r.h2_minus)
           << ',' << num(r.s_ed) << ',' << num(r.s_finite) << ',' << num(r.s_product) << ',' << num(r.s_thermo) << ','
           << r.case_path << ',' << num(r.residual_max) << ',' << (timing ? num(r.wall_time_ms) : std::string())
           << ',' << clean(r.error) << '\n';
    }
}

std::string rows_to_json(const std::vector<ResultRow>& rows, const RowOptions& opt, bool timing,
                         const ConvergeSummary* conv) {
    nlohmann::json j;
    j["meta"] = {{"schema", "xxz-overlap v1"},
                 {"tol", opt.tol},
                 {"extended_precision", opt.extended},
                 {"ed_cap", opt.ed_cap},
                 {"reality_tol", 1e-9}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json o = {{"L", r.L},
                            {"zeta", r.zeta},
                            {"h_plus", r.h_plus},
                            {"h1_minus", r.h1_minus},
                            {"h2_minus", r.h2_minus},
                            {"s_ed", opt_json(r.s_ed)},
                            {"s_finite", opt_json(r.s_finite)},
                            {"s_product", opt_json(r.s_product)},
                            {"s_thermo", opt_json(r.s_thermo)},
                            {"case_path", r.case_path},
                            {"residual_max", r.residual_max},
                            {"wall_time_ms", timing ? nlohmann::json(r.wall_time_ms) : nlohmann::json(nullptr)},
                            {"error", r.error}};
        if (!r.warnings.empty()) o["warnings"] = r.warnings;
        j["rows"].push_back(std::move(o));
    }
    if (conv) {
        nlohmann::json g = nlohmann::json::array(), q = nlohmann::json::array();
        for (double x : conv->gaps) g.push_back(opt_json(x));
        for (double x : conv->ratios) q.push_back(opt_json(x));
        j["converge"] = {{"gaps", g}, {"ratios", q}, {"monotone", conv->monotone},
                         {"decay_ratio", opt_json(conv->decay_ratio)}};
    }
    return j.dump(2);
}

bool run_selftest(std::ostream& os) {
    bool all = true;
    auto check = [&](const std::string& name, auto&& body) {
        bool ok = false;
        std::string detail;
        try {
            std::tie(ok, detail) = body();
        } catch (const std::exception& e) {
            detail = e.what();
        }
        os << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        all = all && ok;
    };
    auto fmt = [](const char* f, double v) {
        char b[64];
        std::snprintf(b, sizeof b, f, v);
        return std::string(b);
    };

    check("lieb equation", [&] {
        double worst = 0.0;
        for (double z : {1.2, 1.5, 1.8})
            for (double l : {0.0, 0.4, 1.2}) worst = std::max(worst, std::abs(lieb_residual(l, z)));
        return std::pair{worst < 1e-12, fmt("max %.2e", worst)};
    });
    check("a_plus functional equations", [&] {
        const ChainParams a{8, 1.5, -1, 2}, b{8, 1.5, 0, 2}, c{8, 1.5, 0.3, -2}, d{8, 1.5, 0.8, -2},
            e{8, 1.5, 0.4, -2}, f{8, 1.5, 1.4, -2};
        std::vector<QSeriesParams> qps = {qseries_params(a, b, 1), qseries_params(c, d, 1, APlusVariant::br_minus_minus),
                                          qseries_params(e, f, 1, APlusVariant::br_minus_single)};
        double worst = 0.0;
        for (const auto& qp : qps)
            for (cplx u : {cplx(0.1), std::polar(0.5, 0.3), cplx(0.9), std::polar(1.0, 2.0)})
                worst = std::max(worst, functional_residual(u, qp));
        return std::pair{worst < 1e-12, fmt("max %.2e", worst)};
    });
    check("thermo reference value", [&] {
        const double v = overlap_thermo({8, 1.5, -1, 2}, {8, 1.5, 0, 2}).value;
        return std::pair{std::abs(v - 0.9798117096020927) < 1e-12, fmt("%.16f", v)};
    });
    check("thermo spin reversal", [&] {
        const ChainParams a{8, 1.5, -1, 2}, b{8, 1.5, 0, 2};
        const double d = std::abs(overlap_thermo(a, b).value -
                                  overlap_thermo(spin_reversal_image(a), spin_reversal_image(b)).value);
        return std::pair{d < 1e-12, fmt("%.2e", d)};
    });
    check("cauchy identity", [&] {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> x(0.05, 1.5);
        double worst = 0.0;
        for (int n = 1; n <= 5; ++n) {
            std::vector<cplx> nu(n), om(n);
            for (int k = 0; k < n; ++k) nu[k] = x(rng), om[k] = x(rng);
            const auto pr = cauchy_det_product_identity(nu, om, Nome::from_zeta(1.5));
            worst = std::max(worst, std::abs(pr.det / pr.product - 1.0));
        }
        return std::pair{worst < 1e-10, fmt("rel %.2e", worst)};
    });
    check("bethe vs ed energy, L=8", [&] {
        double worst = 0.0;
        for (const ChainParams& p : {ChainParams{8, 1.5, -1, 2}, ChainParams{8, 1.5, -1, 0.5}}) {
            const BetheRoots b = solve_ground_state(p);
            worst = std::max(worst, std::abs(energy(b, p) - ground_state(p).energy));
        }
        return std::pair{worst < 1e-8, fmt("%.2e", worst)};
    });
    check("determinant overlap vs ed, L=8", [&] {
        const ResultRow r = compute_row(8, 1.5, 2, -1, 0, RowOptions{});
        const double d = r.s_finite && r.s_ed ? std::abs(*r.s_finite - *r.s_ed) : 1.0;
        return std::pair{d < 1e-7 && r.error.empty(), fmt("%.2e", d)};
    });
    check("sector mismatch, L=7", [&] {
        const ResultRow r = compute_row(7, 1.8, -1, 0, 1.5, RowOptions{});
        const bool ok = r.s_ed == 0.0 && r.s_finite == 0.0 && r.s_thermo == 0.0;
        return std::pair{ok, r.case_path};
    });
    return all;
}

}  // namespace xxz
