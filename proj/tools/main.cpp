// alhazen: command-line front end over the C API. Emits CSV or JSON tables
// (one column set per subcommand) with 17-significant-digit numbers, data on
// stdout, diagnostics on stderr. Exit codes: 0 ok, 2 validation, 3 numerical.

#include "alhazen/alhazen.h"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <string>
#include <variant>
#include <vector>

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_int(long v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%ld", v);
    return buf;
}

struct Column {
    std::string name;
    std::variant<std::vector<double>, std::vector<long>, std::vector<std::string>>
        cells;
};

struct Table {
    // deque: column refs handed out by num()/ints()/strs() must survive
    // later column insertions
    std::deque<Column> cols;

    std::vector<double> &num(const std::string &name) {
        cols.push_back({name, std::vector<double>{}});
        return std::get<std::vector<double>>(cols.back().cells);
    }
    std::vector<long> &ints(const std::string &name) {
        cols.push_back({name, std::vector<long>{}});
        return std::get<std::vector<long>>(cols.back().cells);
    }
    std::vector<std::string> &strs(const std::string &name) {
        cols.push_back({name, std::vector<std::string>{}});
        return std::get<std::vector<std::string>>(cols.back().cells);
    }
};

std::size_t row_count(const Table &t) {
    if (t.cols.empty())
        return 0;
    return std::visit([](const auto &v) { return v.size(); }, t.cols[0].cells);
}

std::string cell_csv(const Column &c, std::size_t row) {
    if (const auto *d = std::get_if<std::vector<double>>(&c.cells))
        return fmt17((*d)[row]);
    if (const auto *i = std::get_if<std::vector<long>>(&c.cells))
        return fmt_int((*i)[row]);
    return std::get<std::vector<std::string>>(c.cells)[row];
}

std::string cell_json(const Column &c, std::size_t row) {
    if (const auto *d = std::get_if<std::vector<double>>(&c.cells)) {
        const double v = (*d)[row];
        if (!std::isfinite(v))
            return "null";
        return fmt17(v);
    }
    if (const auto *i = std::get_if<std::vector<long>>(&c.cells))
        return fmt_int((*i)[row]);
    return "\"" + std::get<std::vector<std::string>>(c.cells)[row] + "\"";
}

std::string render(const Table &t, const std::string &format) {
    std::string out;
    const std::size_t rows = row_count(t);
    if (format == "json") {
        out += "{\n";
        for (std::size_t c = 0; c < t.cols.size(); ++c) {
            out += "  \"" + t.cols[c].name + "\": [";
            for (std::size_t r = 0; r < rows; ++r) {
                if (r)
                    out += ", ";
                out += cell_json(t.cols[c], r);
            }
            out += "]";
            out += (c + 1 < t.cols.size()) ? ",\n" : "\n";
        }
        out += "}\n";
        return out;
    }
    for (std::size_t c = 0; c < t.cols.size(); ++c) {
        if (c)
            out += ",";
        out += t.cols[c].name;
    }
    out += "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < t.cols.size(); ++c) {
            if (c)
                out += ",";
            out += cell_csv(t.cols[c], r);
        }
        out += "\n";
    }
    return out;
}

int emit(const Table &t, const std::string &format, const std::string &out_path) {
    const std::string payload = render(t, format);
    if (out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return 0;
    }
    std::FILE *f = std::fopen(out_path.c_str(), "wb");
    if (!f) {
        std::fprintf(stderr, "alhazen: error: InvalidArgument: cannot open %s\n",
                     out_path.c_str());
        return 2;
    }
    std::fwrite(payload.data(), 1, payload.size(), f);
    std::fclose(f);
    return 0;
}

bool is_validation(alh_status st) {
    switch (st) {
    case ALH_NON_POSITIVE_RADIUS:
    case ALH_FOCAL_INSIDE_SPHERE:
    case ALH_THETA_OUT_OF_RANGE:
    case ALH_NON_FINITE_INPUT:
    case ALH_INVALID_ARGUMENT:
    case ALH_INVALID_TOLERANCE:
        return true;
    default:
        return false;
    }
}

int fail(alh_status st, const std::string &detail) {
    std::fprintf(stderr, "alhazen: error: %s: %s\n", alh_status_name(st),
                 detail.c_str());
    return is_validation(st) ? 2 : 3;
}

struct SceneFlags {
    double r = 1.0;
    double ra = 2.0;
    double rb = 3.0;
    double angle2 = 0.0;
    bool degrees = false;
};

// Owns the handle; destroys on scope exit.
struct SceneHandle {
    alh_scene *s = nullptr;
    ~SceneHandle() { alh_scene_destroy(s); }
};

int make_scene(const SceneFlags &f, double angle2_rad, SceneHandle &h) {
    const alh_status st = alh_scene_create(f.r, f.ra, f.rb, angle2_rad, &h.s);
    if (st == ALH_OK)
        return 0;
    char detail[160];
    if (st == ALH_THETA_OUT_OF_RANGE) {
        double bound = 0.0;
        alh_theta2_max(f.r, f.ra, f.rb, &bound);
        std::snprintf(detail, sizeof detail,
                      "angle2=%.17g outside [0, %.17g]", angle2_rad, bound);
    } else {
        std::snprintf(detail, sizeof detail, "r=%.17g ra=%.17g rb=%.17g angle2=%.17g",
                      f.r, f.ra, f.rb, angle2_rad);
    }
    return fail(st, detail);
}

double to_radians(double v, bool degrees) {
    return degrees ? v * kPi / 180.0 : v;
}

// ---------------------------------------------------------------------
// --verify support: re-run the oracle and insist the reported angle is on
// the sign change it found.

int verify_phi(alh_scene *s, double phi, const char *where) {
    double star = 0.0, lo = 0.0, hi = 0.0;
    long evals = 0;
    const alh_status st = alh_brute_force_specular(s, 20000, &star, &lo, &hi, &evals);
    if (st != ALH_OK)
        return fail(st, std::string("oracle re-check failed in ") + where);
    const double mm = alh_specular_mismatch(s, phi);
    if (std::fabs(phi - star) > 1e-9 || std::fabs(mm) > 1e-10) {
        char detail[200];
        std::snprintf(detail, sizeof detail,
                      "%s: phi=%.17g oracle=%.17g mismatch=%.3g", where, phi,
                      star, mm);
        return fail(ALH_NOT_A_ROOT, detail);
    }
    return 0;
}

// ---------------------------------------------------------------------
// solve

int cmd_solve(const SceneFlags &f, double phi0, double tol, int max_iter,
              bool verify, const std::string &format, const std::string &out) {
    SceneHandle h;
    if (int rc = make_scene(f, to_radians(f.angle2, f.degrees), h))
        return rc;
    const double phi0_rad = to_radians(phi0, f.degrees);

    alh_trace *trace = nullptr;
    alh_status st = alh_solve_fixed_point(h.s, phi0_rad, tol, max_iter, &trace);
    if (st != ALH_OK) {
        alh_trace_destroy(trace);
        char detail[120];
        std::snprintf(detail, sizeof detail, "fixed-point solve, phi0=%.17g tol=%.3g",
                      phi0_rad, tol);
        return fail(st, detail);
    }
    const double phi_m = alh_result_phi(trace);
    double px = 0.0, py = 0.0;
    alh_result_point(trace, &px, &py);
    const double incidence = alh_result_incidence(trace);
    const long iters = alh_result_iterations(trace);
    const long converged = alh_trace_converged(trace);
    double rate = std::nan("");
    alh_convergence_rate(trace, &rate);
    const double mm_fp = alh_specular_mismatch(h.s, phi_m);
    alh_trace_destroy(trace);

    double phi_q = std::nan("");
    st = alh_specular_root_quartic(h.s, &phi_q);
    if (st != ALH_OK)
        return fail(st, "quartic route");
    double coeffs[5];
    alh_quartic_coefficients(h.s, coeffs, nullptr, nullptr);
    const double t_q = std::tan(phi_q);
    double resid_q = std::fabs(
        (((coeffs[0] * t_q + coeffs[1]) * t_q + coeffs[2]) * t_q + coeffs[3]) *
            t_q +
        coeffs[4]);
    {
        const double m = std::fmax(1.0, std::fabs(t_q));
        resid_q /= std::fabs(coeffs[0]) * m * m * m * m;
    }
    const double mm_q = alh_specular_mismatch(h.s, phi_q);

    double phi_o = std::nan(""), lo = 0.0, hi = 0.0;
    long evals = 0;
    st = alh_brute_force_specular(h.s, 100000, &phi_o, &lo, &hi, &evals);
    if (st != ALH_OK)
        return fail(st, "oracle route");
    const double mm_o = alh_specular_mismatch(h.s, phi_o);

    if (verify) {
        if (int rc = verify_phi(h.s, phi_m, "solve"))
            return rc;
    }

    Table t;
    t.num("phi_M_rad") = {phi_m};
    t.num("phi_M_deg") = {phi_m * 180.0 / kPi};
    t.num("point_x") = {px};
    t.num("point_y") = {py};
    t.num("incidence_rad") = {incidence};
    t.num("incidence_deg") = {incidence * 180.0 / kPi};
    t.ints("iterations") = {iters};
    t.num("rate") = {rate};
    t.ints("converged") = {converged};
    t.num("phi_quartic") = {phi_q};
    t.num("phi_oracle") = {phi_o};
    t.num("mismatch_fixed_point") = {mm_fp};
    t.num("mismatch_quartic") = {mm_q};
    t.num("mismatch_oracle") = {mm_o};
    t.num("residual_quartic") = {resid_q};
    t.num("delta_quartic_fixed_point") = {std::fabs(phi_q - phi_m)};
    t.num("delta_oracle_fixed_point") = {std::fabs(phi_o - phi_m)};
    t.ints("grazing") = {alh_scene_grazing(h.s)};
    t.ints("swapped") = {alh_scene_swapped(h.s)};
    return emit(t, format, out);
}

// ---------------------------------------------------------------------
// roots

int cmd_roots(const SceneFlags &f, const std::vector<double> &coeffs, bool verify,
              const std::string &format, const std::string &out) {
    if (!coeffs.empty()) {
        if (coeffs.size() != 5)
            return fail(ALH_INVALID_ARGUMENT, "--coeffs needs exactly 5 values");
        double c[5];
        for (int i = 0; i < 5; ++i)
            c[i] = coeffs[static_cast<std::size_t>(i)];
        double roots[4];
        if (alh_status st = alh_solve_quartic(c, roots); st != ALH_OK)
            return fail(st, "synthetic quartic solve");
        Table t;
        auto &tc = t.num("t");
        auto &rc = t.num("residual");
        for (double root : roots) {
            tc.push_back(root);
            double m = std::fmax(1.0, std::fabs(root));
            double p =
                (((c[0] * root + c[1]) * root + c[2]) * root + c[3]) * root + c[4];
            rc.push_back(std::fabs(p) / (std::fabs(c[0]) * m * m * m * m));
        }
        return emit(t, format, out);
    }

    SceneHandle h;
    if (int rc = make_scene(f, to_radians(f.angle2, f.degrees), h))
        return rc;
    double tv[4], phiv[4], residv[4], asumv[4];
    int kindv[4];
    int physical = -1;
    if (alh_status st =
            alh_root_table(h.s, tv, phiv, kindv, residv, asumv, &physical);
        st != ALH_OK)
        return fail(st, "root table");

    if (verify) {
        if (int rc = verify_phi(h.s, phiv[physical], "roots"))
            return rc;
    }

    Table t;
    auto &tc = t.num("t");
    auto &pc = t.num("phi");
    auto &kc = t.strs("kind");
    auto &rc = t.num("residual");
    auto &ac = t.num("angle_sum_check");
    auto &fc = t.ints("physical");
    for (int i = 0; i < 4; ++i) {
        tc.push_back(tv[i]);
        pc.push_back(phiv[i]);
        kc.push_back(alh_reflection_kind_name(
            static_cast<alh_reflection_kind>(kindv[i])));
        rc.push_back(residv[i]);
        ac.push_back(asumv[i]);
        fc.push_back(i == physical ? 1 : 0);
    }
    return emit(t, format, out);
}

// ---------------------------------------------------------------------
// sweep-theta

int cmd_sweep_theta(const SceneFlags &f, double phi0, double tol, int max_iter,
                    int grid, bool verify, const std::string &format,
                    const std::string &out) {
    double t2max = 0.0;
    if (alh_status st = alh_theta2_max(f.r, f.ra, f.rb, &t2max); st != ALH_OK)
        return fail(st, "tangency bound");
    if (grid < 2)
        return fail(ALH_INVALID_ARGUMENT, "--grid must be at least 2");

    Table t;
    auto &a2 = t.num("theta2");
    auto &pm = t.num("phi_M");
    auto &it = t.ints("iterations");
    auto &rt = t.num("rate");

    const double phi0_rad = to_radians(phi0, f.degrees);
    for (int i = 0; i < grid; ++i) {
        const double theta2 =
            t2max * static_cast<double>(i) / static_cast<double>(grid - 1);
        SceneHandle h;
        if (int rc = make_scene(f, theta2, h))
            return rc;
        alh_trace *trace = nullptr;
        alh_status st = alh_solve_fixed_point(h.s, phi0_rad, tol, max_iter, &trace);
        if (st != ALH_OK) {
            alh_trace_destroy(trace);
            char detail[120];
            std::snprintf(detail, sizeof detail, "sweep row theta2=%.17g", theta2);
            return fail(st, detail);
        }
        double rate = std::nan("");
        alh_convergence_rate(trace, &rate);
        a2.push_back(theta2);
        pm.push_back(alh_result_phi(trace));
        it.push_back(alh_result_iterations(trace));
        rt.push_back(rate);
        alh_trace_destroy(trace);
        if (verify && (i % 16 == 0 || i == grid - 1)) {
            if (int rc = verify_phi(h.s, pm.back(), "sweep-theta"))
                return rc;
        }
    }
    return emit(t, format, out);
}

// ---------------------------------------------------------------------
// iterate-map

int cmd_iterate_map(const SceneFlags &f, int grid, const std::string &format,
                    const std::string &out) {
    SceneHandle h;
    if (int rc = make_scene(f, to_radians(f.angle2, f.degrees), h))
        return rc;
    const double bound = alh_phi_upper_bound(h.s);
    if (bound != 0.0 && grid < 2)
        return fail(ALH_INVALID_ARGUMENT, "--grid must be at least 2");
    const int n = bound == 0.0 ? 1 : grid;

    Table t;
    auto &pc = t.num("phi");
    auto &fc = t.num("f_phi");
    auto &gc = t.num("diagonal_gap");
    for (int i = 0; i < n; ++i) {
        const double phi =
            n == 1 ? 0.0
                   : bound * static_cast<double>(i) / static_cast<double>(n - 1);
        double fp = 0.0;
        if (alh_status st = alh_iterate_once(h.s, phi, &fp); st != ALH_OK) {
            char detail[120];
            std::snprintf(detail, sizeof detail, "map row phi=%.17g", phi);
            return fail(st, detail);
        }
        pc.push_back(phi);
        fc.push_back(fp);
        gc.push_back(fp - phi);
    }
    return emit(t, format, out);
}

// ---------------------------------------------------------------------
// error-sweep

int cmd_error_sweep(const SceneFlags &f, double phi0, double tol, int max_iter,
                    int grid, const std::string &sweep, const std::string &format,
                    const std::string &out) {
    Table t;
    if (sweep == "phi0") {
        SceneHandle h;
        if (int rc = make_scene(f, to_radians(f.angle2, f.degrees), h))
            return rc;
        const double bound = alh_phi_upper_bound(h.s);
        if (bound != 0.0 && grid < 2)
            return fail(ALH_INVALID_ARGUMENT, "--grid must be at least 2");
        const int n = bound == 0.0 ? 1 : grid;

        alh_trace *trace = nullptr;
        if (alh_status st = alh_solve_fixed_point(h.s, 0.0, tol, max_iter, &trace);
            st != ALH_OK) {
            alh_trace_destroy(trace);
            return fail(st, "fixed-point reference solve");
        }
        const double phi_m = alh_result_phi(trace);
        alh_trace_destroy(trace);
        const bool absolute = std::fabs(phi_m) < 1e-12;

        auto &p0 = t.num("phi0");
        auto &re = t.num("rel_error");
        auto &ae = t.num("abs_error");
        auto &am = t.ints("absolute_mode");
        auto &fp = t.num("area_form_printed");
        auto &fa = t.num("area_form_alt");
        for (int i = 0; i < n; ++i) {
            const double p =
                n == 1 ? 0.0
                       : bound * static_cast<double>(i) / static_cast<double>(n - 1);
            double first = 0.0;
            if (alh_status st = alh_first_order_phi(h.s, p, &first); st != ALH_OK) {
                char detail[120];
                std::snprintf(detail, sizeof detail, "sweep row phi0=%.17g", p);
                return fail(st, detail);
            }
            const double abs_err = std::fabs(first - phi_m);
            p0.push_back(p);
            re.push_back(absolute ? std::fabs(first) : abs_err / std::fabs(phi_m));
            ae.push_back(abs_err);
            am.push_back(absolute ? 1 : 0);
            double printed = std::nan(""), alt = std::nan("");
            alh_area_form_printed(h.s, p, &printed); // nan cell on failure
            alh_area_form_alt(h.s, p, &alt);
            fp.push_back(printed);
            fa.push_back(alt);
        }
    } else { // sweep == "theta2"
        double t2max = 0.0;
        if (alh_status st = alh_theta2_max(f.r, f.ra, f.rb, &t2max); st != ALH_OK)
            return fail(st, "tangency bound");
        if (grid < 2)
            return fail(ALH_INVALID_ARGUMENT, "--grid must be at least 2");
        const double top = 0.9 * t2max;
        const double bottom = 1e-12;
        const double phi0_rad = to_radians(phi0, f.degrees);

        auto &a2 = t.num("theta2");
        auto &re = t.num("rel_error");
        auto &ae = t.num("abs_error");
        auto &am = t.ints("absolute_mode");
        auto &fp = t.num("area_form_printed");
        auto &fa = t.num("area_form_alt");
        for (int i = 0; i < grid; ++i) {
            // geometric grid, ascending from the collinear limit to 0.9*max
            const double frac =
                static_cast<double>(i) / static_cast<double>(grid - 1);
            const double theta2 = bottom * std::pow(top / bottom, frac);
            SceneHandle h;
            if (int rc = make_scene(f, theta2, h))
                return rc;
            alh_trace *trace = nullptr;
            if (alh_status st =
                    alh_solve_fixed_point(h.s, 0.0, tol, max_iter, &trace);
                st != ALH_OK) {
                alh_trace_destroy(trace);
                char detail[120];
                std::snprintf(detail, sizeof detail, "sweep row theta2=%.17g",
                              theta2);
                return fail(st, detail);
            }
            const double phi_m = alh_result_phi(trace);
            alh_trace_destroy(trace);
            const bool absolute = std::fabs(phi_m) < 1e-12;
            double first = 0.0;
            const double p0 = std::fmin(phi0_rad, alh_phi_upper_bound(h.s));
            if (alh_status st = alh_first_order_phi(h.s, p0, &first);
                st != ALH_OK) {
                char detail[120];
                std::snprintf(detail, sizeof detail, "sweep row theta2=%.17g",
                              theta2);
                return fail(st, detail);
            }
            const double abs_err = std::fabs(first - phi_m);
            a2.push_back(theta2);
            re.push_back(absolute ? std::fabs(first) : abs_err / std::fabs(phi_m));
            ae.push_back(abs_err);
            am.push_back(absolute ? 1 : 0);
            double printed = std::nan(""), alt = std::nan("");
            alh_area_form_printed(h.s, p0, &printed);
            alh_area_form_alt(h.s, p0, &alt);
            fp.push_back(printed);
            fa.push_back(alt);
        }
    }
    return emit(t, format, out);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"specular reflection point on a sphere: quartic, fixed-point "
                 "iteration, closed-form approximation, brute-force oracle"};
    app.require_subcommand(1);

    SceneFlags f;
    double phi0 = 0.0;
    double tol = 1e-12;
    int max_iter = 64;
    int grid = 256;
    std::string format = "csv";
    std::string out_path;
    bool verify = false;
    std::vector<double> coeffs;
    std::string sweep = "phi0";

    auto add_scene_flags = [&](CLI::App *cmd, bool with_angle) {
        cmd->add_option("--r", f.r, "sphere radius");
        cmd->add_option("--ra", f.ra, "first focal distance from the center");
        cmd->add_option("--rb", f.rb, "second focal distance from the center");
        if (with_angle)
            cmd->add_option("--angle2", f.angle2,
                            "full angle between the focal rays (2*theta)");
        cmd->add_flag("--degrees", f.degrees,
                      "interpret --angle2 and --phi0 as degrees");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "write the table to a file");
    };

    CLI::App *solve = app.add_subcommand(
        "solve", "specular point by all three routes, with diagnostics");
    add_scene_flags(solve, true);
    solve->add_option("--phi0", phi0, "initial angle for the iteration");
    solve->add_option("--tol", tol, "successive-difference stopping tolerance");
    solve->add_option("--max-iter", max_iter, "iteration cap");
    solve->add_flag("--verify", verify, "re-check the answer against the oracle");

    CLI::App *roots = app.add_subcommand(
        "roots", "classified quartic root table for the scene");
    add_scene_flags(roots, true);
    roots->add_option("--coeffs", coeffs,
                      "solve these 5 quartic coefficients instead (c4,...,c0)")
        ->delimiter(',')
        ->expected(1, 5);
    roots->add_flag("--verify", verify, "re-check the physical root");

    CLI::App *sweep_theta = app.add_subcommand(
        "sweep-theta", "specular angle as the focal rays open up to tangency");
    add_scene_flags(sweep_theta, false);
    sweep_theta->add_option("--phi0", phi0, "initial angle for the iteration");
    sweep_theta->add_option("--tol", tol, "stopping tolerance");
    sweep_theta->add_option("--max-iter", max_iter, "iteration cap");
    sweep_theta->add_option("--grid", grid, "number of angle samples");
    sweep_theta->add_flag("--verify", verify, "oracle-check sampled rows");

    CLI::App *iterate_map = app.add_subcommand(
        "iterate-map", "one application of the construction across the arc");
    add_scene_flags(iterate_map, true);
    iterate_map->add_option("--grid", grid, "number of phi samples");

    CLI::App *error_sweep = app.add_subcommand(
        "error-sweep", "first-order approximation error and the two area forms");
    add_scene_flags(error_sweep, true);
    error_sweep->add_option("--phi0", phi0, "initial angle");
    error_sweep->add_option("--tol", tol, "stopping tolerance");
    error_sweep->add_option("--max-iter", max_iter, "iteration cap");
    error_sweep->add_option("--grid", grid, "number of sweep samples");
    error_sweep->add_option("--sweep", sweep, "sweep variable")
        ->check(CLI::IsMember({"phi0", "theta2"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    if (!std::isfinite(tol) || tol <= 0.0)
        return fail(ALH_INVALID_TOLERANCE, "--tol must be positive and finite");
    if (max_iter < 1)
        return fail(ALH_INVALID_ARGUMENT, "--max-iter must be at least 1");

    if (solve->parsed())
        return cmd_solve(f, phi0, tol, max_iter, verify, format, out_path);
    if (roots->parsed())
        return cmd_roots(f, coeffs, verify, format, out_path);
    if (sweep_theta->parsed())
        return cmd_sweep_theta(f, phi0, tol, max_iter, grid, verify, format,
                               out_path);
    if (iterate_map->parsed())
        return cmd_iterate_map(f, grid, format, out_path);
    if (error_sweep->parsed())
        return cmd_error_sweep(f, phi0, tol, max_iter, grid, sweep, format,
                               out_path);
    return 2; // unreachable: require_subcommand(1)
}
