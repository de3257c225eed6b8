#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "xxz/bethe.hpp"
#include "xxz/ed.hpp"
#include "xxz/errors.hpp"
#include "xxz/pipeline.hpp"

using namespace xxz;
using nlohmann::json;

namespace {

constexpr int kExitSolver = 2;
constexpr int kExitRegime = 3;
constexpr int kExitUsage = 64;

int exit_code_for(ErrorCode c) {
    if (c == ErrorCode::Domain) return kExitUsage;
    return is_regime_error(c) ? kExitRegime : kExitSolver;
}

struct Common {
    double tol = 1e-11;
    bool extended = false;
    bool ed = true;
    std::string format = "csv";
    std::string out;
    bool no_timing = false;
};

void add_common(CLI::App* sub, Common& c, bool with_format = true) {
    sub->add_option("--tol", c.tol, "Bethe residual tolerance")->check(CLI::PositiveNumber);
    sub->add_flag("--extended-precision", c.extended, "long double determinant accumulation");
    sub->add_flag("--ed,!--no-ed", c.ed, "include the exact-diagonalization estimator (L <= 16)");
    if (with_format) {
        sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", c.out, "output file (default stdout)");
        sub->add_flag("--no-timing", c.no_timing, "leave wall_time_ms empty so reruns are byte-identical");
    }
}

RowOptions row_options(const Common& c) {
    RowOptions o;
    o.tol = c.tol;
    o.extended = c.extended;
    o.which.ed = c.ed;
    return o;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw Error(ErrorCode::Domain, "cannot open " + c.out);
    f << text;
}

std::string render(const Common& c, const std::vector<ResultRow>& rows, const ConvergeSummary* conv = nullptr) {
    if (c.format == "json") return rows_to_json(rows, row_options(c), !c.no_timing, conv) + "\n";
    std::ostringstream os;
    write_csv(os, rows, !c.no_timing);
    if (conv) {
        os << "# gaps";
        for (double g : conv->gaps) os << ' ' << g;
        os << "\n# monotone " << (conv->monotone ? "yes" : "no") << " decay_ratio " << conv->decay_ratio << '\n';
    }
    return os.str();
}

int cmd_roots(const ChainParams& p, const Common& c) {
    const BetheRoots b = solve_ground_state(p, SolverOptions{c.tol});
    json j;
    j["params"] = {{"L", p.L}, {"zeta", p.zeta}, {"h_minus", p.h_minus}, {"h_plus", p.h_plus}};
    j["case"] = to_string(b.regime.case_label);
    j["N"] = b.N();
    j["spin_reversed"] = b.spin_reversed;
    j["real_roots"] = b.real_roots;
    j["quantum_numbers"] = b.quantum_numbers;
    if (b.boundary_root) {
        const auto& br = *b.boundary_root;
        const cplx v = br.value();
        j["boundary_root"] = {{"side", to_string(br.side)},
                              {"re", v.real()},
                              {"im", v.imag()},
                              {"epsilon_re", br.epsilon_corr.real()},
                              {"epsilon_im", br.epsilon_corr.imag()},
                              {"clamped", br.clamped}};
    }
    j["residual_max"] = b.residual_max;
    const double e = energy(b, p);
    j["energy"] = e;
    if (!b.warnings.empty()) j["warnings"] = b.warnings;
    if (c.ed) {
        if (p.L <= kEdCap) {
            const GroundStateVector g = ground_state(p);
            j["ed"] = {{"energy", g.energy}, {"sector", g.sector}, {"gap", g.gap}, {"abs_diff", std::abs(e - g.energy)}};
        } else {
            j["ed"] = "skipped: L above cap";
        }
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_overlap(int L, double zeta, double hp, double h1, double h2, const Common& c) {
    const ResultRow r = compute_row(L, zeta, hp, h1, h2, row_options(c));
    if (c.format == "json") {
        json j = json::parse(rows_to_json({r}, row_options(c), !c.no_timing));
        json gaps = json::object();
        const std::pair<const char*, const std::optional<double>*> cols[] = {
            {"ed", &r.s_ed}, {"finite", &r.s_finite}, {"product", &r.s_product}, {"thermo", &r.s_thermo}};
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b)
                if (*cols[a].second && *cols[b].second)
                    gaps[std::string(cols[a].first) + "-" + cols[b].first] =
                        std::abs(**cols[a].second - **cols[b].second);
        j["gaps"] = gaps;
        emit(c, j.dump(2) + "\n");
    } else {
        emit(c, render(c, {r}));
    }
    if (!r.error.empty()) {
        std::cerr << "error: " << r.error << '\n';
        return r.error_code ? exit_code_for(*r.error_code) : kExitSolver;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground-state overlaps of the open XXZ chain under a change of boundary field"};
    app.require_subcommand(1);

    ChainParams rp;
    Common rc;
    auto* roots = app.add_subcommand("roots", "solve the Bethe equations for one ground state");
    roots->add_option("--L", rp.L)->required()->check(CLI::Range(2, 4096));
    roots->add_option("--zeta", rp.zeta)->required();
    roots->add_option("--h-minus", rp.h_minus)->required();
    roots->add_option("--h-plus", rp.h_plus)->required();
    add_common(roots, rc, false);
    rc.ed = false;

    int L = 0;
    double zeta = 0.0, hp = 0.0, h1 = 0.0, h2 = 0.0;
    Common oc;
    auto* overlap = app.add_subcommand("overlap", "overlap of the two ground states at one point");
    overlap->add_option("--L", L)->required()->check(CLI::Range(2, 4096));
    overlap->add_option("--zeta", zeta)->required();
    overlap->add_option("--h-plus", hp)->required();
    overlap->add_option("--h1-minus", h1)->required();
    overlap->add_option("--h2-minus", h2)->required();
    add_common(overlap, oc);

    SweepSpec ss;
    Common sc;
    std::string grid, lengths, swept = "h2_minus", outputs = "ed,finite,product,thermo";
    double fixed = 0.0;
    auto* sweep = app.add_subcommand("sweep", "scan one boundary field over a grid");
    sweep->add_option("--zeta", ss.zeta)->required();
    sweep->add_option("--h-plus", ss.h_plus)->required();
    auto* o1 = sweep->add_option("--h1-minus", fixed, "fixed h1- when sweeping h2-");
    auto* o2 = sweep->add_option("--h2-minus", fixed, "fixed h2- when sweeping h1-");
    o1->excludes(o2);
    sweep->add_option("--sweep", swept, "field to scan")->check(CLI::IsMember({"h1_minus", "h2_minus"}));
    sweep->add_option("--grid", grid, "start:stop:step")->required();
    sweep->add_option("--lengths", lengths, "comma-separated, same parity")->required();
    sweep->add_option("--outputs", outputs, "subset of ed,finite,product,thermo");
    sweep->add_option("--jobs", ss.jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    add_common(sweep, sc);

    Common cc;
    std::string clengths;
    auto* converge = app.add_subcommand("converge", "finite-L overlaps against the thermodynamic limit");
    converge->add_option("--zeta", zeta)->required();
    converge->add_option("--h-plus", hp)->required();
    converge->add_option("--h1-minus", h1)->required();
    converge->add_option("--h2-minus", h2)->required();
    converge->add_option("--lengths", clengths, "ascending, same parity")->required();
    add_common(converge, cc);

    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*roots) return cmd_roots(rp, rc);
        if (*overlap) return cmd_overlap(L, zeta, hp, h1, h2, oc);
        if (*sweep) {
            if (swept == "h2_minus" && !*o1) throw CLI::ValidationError("--h1-minus is required when sweeping h2-");
            if (swept == "h1_minus" && !*o2) throw CLI::ValidationError("--h2-minus is required when sweeping h1-");
            ss.swept = swept == "h1_minus" ? SweptField::h1_minus : SweptField::h2_minus;
            ss.fixed_minus = fixed;
            ss.grid = parse_grid(grid);
            ss.lengths = parse_lengths(lengths);
            ss.options = row_options(sc);
            Estimators w{false, false, false, false};
            std::istringstream is(outputs);
            for (std::string tok; std::getline(is, tok, ',');) {
                if (tok == "ed") w.ed = sc.ed;
                else if (tok == "finite") w.finite = true;
                else if (tok == "product") w.product = true;
                else if (tok == "thermo") w.thermo = true;
                else throw CLI::ValidationError("unknown output '" + tok + "'");
            }
            ss.options.which = w;
            const auto rows = run_sweep(ss);
            emit(sc, render(sc, rows));
            int failed = 0;
            for (const auto& r : rows) failed += !r.error.empty();
            if (failed) std::cerr << failed << " of " << rows.size() << " points carry an error\n";
            return 0;
        }
        if (*converge) {
            const auto ls = parse_lengths(clengths);
            for (std::size_t k = 0; k < ls.size(); ++k) {
                if (ls[k] % 2 != ls[0] % 2) throw CLI::ValidationError("lengths must share parity");
                if (k && ls[k] <= ls[k - 1]) throw CLI::ValidationError("lengths must ascend");
            }
            RowOptions o = row_options(cc);
            o.which.product = false;
            std::vector<ResultRow> rows;
            for (int l : ls) rows.push_back(compute_row(l, zeta, hp, h1, h2, o));
            const ConvergeSummary s = summarize_convergence(rows);
            emit(cc, render(cc, rows, &s));
            if (rows.size() > 1) {
                std::cerr << (s.monotone ? "gap decreasing" : "NonMonotone: gap does not decrease at every step")
                          << ", geometric decay ratio " << s.decay_ratio << '\n';
            }
            return 0;
        }
        if (*selftest) return run_selftest(std::cout) ? 0 : 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitUsage;
}
