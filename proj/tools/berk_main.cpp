// Command-line front end: every kernel operation behind JSON subcommands,
// plus an SVG rendering of the spectrum star.

#include <CLI11.hpp>
#include <json.hpp>
#include <mpfr.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "berk/json_io.hpp"

using namespace berk;

namespace {

magnitude parse_tolerance(const std::string& s) {
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        rat base = parse_rational(s.substr(0, caret));
        rat expo = parse_rational(s.substr(caret + 1));
        return magnitude::pow_of(base, expo);
    }
    rat v = parse_rational(s);
    if (v == 0) return magnitude::zero();
    return magnitude::from_rational(v);
}

cousin_system_z system_from_json(const json& j, const std::string& path) {
    place pl = place_from_json(j.contains("place") ? j.at("place") : json("inf"),
                               path + ".place");
    rat cut = rat_from_json(j.contains("cut") ? j.at("cut") : json("1"), path + ".cut");
    if (pl.is_finite()) return cousin_system_z::finite_cut(pl.prime, cut);
    if (pl.is_infinite()) return cousin_system_z::infinite_cut(cut);
    throw precondition_error(path + ": cut place must be finite or infinite");
}

json run_eval(const json& in) {
    if (in.contains("poly")) {
        base_point b = base_point_from_json(in.at("base"), "base");
        poly_q P = poly_from_json(in.at("poly"), "poly");
        if (in.contains("gauss_r")) {
            rat r = rat_from_json(in.at("gauss_r"), "gauss_r");
            return json{{"magnitude", to_json(gauss_section_eval(b, r, P))}};
        }
        fiber_point x = fiber_point_from_json(in.at("fiber"), "fiber");
        return json{{"magnitude", to_json(eval_line_seminorm(b, x, P))}};
    }
    base_point x = base_point_from_json(in.at("point"), "point");
    rat a = rat_from_json(in.at("value"), "value");
    return json{{"magnitude", to_json(eval_base_seminorm(x, a))}};
}

json run_supnorm(const json& in) {
    star_compact V = star_compact_from_json(in.at("compact"), "compact");
    rat a = rat_from_json(in.at("value"), "value");
    return json{{"magnitude", to_json(sup_norm_on_compact(V, a))}};
}

json run_path(const json& in) {
    if (in.contains("scale")) {
        const json& sc = in.at("scale");
        base_point x = base_point_from_json(sc.at("point"), "scale.point");
        rat t = rat_from_json(sc.at("t"), "scale.t");
        return json{{"point", to_json(scale_point(x, t))}};
    }
    base_point x = base_point_from_json(in.at("from"), "from");
    base_point y = base_point_from_json(in.at("to"), "to");
    json segs = json::array();
    for (auto& s : path_between(x, y)) segs.push_back(to_json(s));
    return json{{"segments", segs}};
}

json run_newton(const json& in) {
    poly_q P = poly_from_json(in.at("poly"), "poly");
    json pj = in.at("p");
    bigint p;
    if (mpz_set_str(p.get_mpz_t(), pj.get<std::string>().c_str(), 10) != 0)
        throw precondition_error("p: bad integer");
    json out;
    json radii = json::array();
    for (auto& r : newton_root_radii(P, p)) {
        json e{{"multiplicity", r.multiplicity}};
        e["radius"] = r.zero_radius ? json{{"zero", true}} : to_json(r.radius);
        radii.push_back(e);
    }
    out["radii"] = radii;
    if (in.contains("sigma_rho")) {
        const json& sr = in.at("sigma_rho");
        base_point b(place::finite(p), ext_rat(rat(1)));
        rat s = rat_from_json(sr.at("s"), "sigma_rho.s");
        long d = sr.at("d").get<long>();
        auto data = sigma_rho_bound(P, b, s, d);
        out["sigma_rho"] = json{{"sigma", to_json(data.sigma)},
                                {"rho", to_json(data.rho)},
                                {"C", to_json(data.C)}};
    }
    return out;
}

json run_region(const json& in) {
    std::string query = in.value("query", "membership");
    if (query == "membership") {
        base_point b = base_point_from_json(in.at("base"), "base");
        fiber_point x = fiber_point_from_json(in.at("point"), "point");
        lemniscate_region R = region_from_json(in.at("region"), "region");
        return json{{"member", membership(b, x, R)}};
    }
    if (query == "components") {
        poly_q P = poly_from_json(in.at("poly"), "poly");
        rat s = rat_from_json(in.at("s"), "s");
        json pj = in.at("p");
        bigint p;
        if (mpz_set_str(p.get_mpz_t(), pj.get<std::string>().c_str(), 10) != 0)
            throw precondition_error("p: bad integer");
        auto part = lemniscate_components(P, s, p);
        json clusters = json::array();
        for (auto& cl : part.clusters) {
            json roots = json::array();
            for (size_t i : cl.root_indices) roots.push_back(rational_string(part.roots[i]));
            clusters.push_back(json{{"roots", roots}, {"radius", to_json(cl.radius)}});
        }
        return json{{"clusters", clusters}, {"connected", part.connected()}};
    }
    if (query == "rigid-neighborhood") {
        base_point b = base_point_from_json(in.at("base"), "base");
        poly_q mu = poly_from_json(in.at("mu"), "mu");
        rat s1 = rat_from_json(in.at("s1"), "s1");
        rat s2 = rat_from_json(in.at("s2"), "s2");
        auto r = rigid_neighborhood(b, mu, s1, s2);
        return json{{"region", to_json(r.region)},
                    {"member", r.center_is_member},
                    {"split", r.split_over_q},
                    {"connected", r.connected}};
    }
    throw precondition_error("query: unknown region query " + query);
}

json run_divide(const json& in) {
    disk_element F = disk_element_from_json(in.at("F"), "F");
    disk_element G = disk_element_from_json(in.at("G"), "G");
    rat s = rat_from_json(in.at("s"), "s");
    auto d = weierstrass_divide(F, G, s);
    return to_json(d);
}

json run_prepare(const json& in) {
    disk_element G = disk_element_from_json(in.at("G"), "G");
    rat s = rat_from_json(in.at("s"), "s");
    auto p = weierstrass_prepare(G, s);
    return json{{"omega", to_json(p.omega)}, {"unit", to_json(p.unit)}, {"n", p.n}};
}

json run_cousin(const json& in) {
    cousin_system_z sys = system_from_json(in.at("system"), "system");
    if (in.contains("lift")) {
        disk_element f = disk_element_from_json(in.at("lift"), "lift");
        auto [fm, fp] = lift_split_to_disk(sys, f);
        return json{{"minus", to_json(fm)}, {"plus", to_json(fp)}};
    }
    rat f = rat_from_json(in.at("value"), "value");
    return to_json(cousin_split(sys, f));
}

json run_runge(const json& in) {
    cousin_system_z sys = system_from_json(in.at("system"), "system");
    std::string side_s = in.at("side").get<std::string>();
    runge_side side;
    if (side_s == "minus") side = runge_side::minus;
    else if (side_s == "plus") side = runge_side::plus;
    else throw precondition_error("side: expected minus|plus");
    std::vector<rat> targets;
    size_t i = 0;
    for (auto& t : in.at("targets"))
        targets.push_back(rat_from_json(t, "targets[" + std::to_string(i++) + "]"));
    rat eps = rat_from_json(in.value("eps", json("1/8")), "eps");
    auto r = runge_approx(sys, side, targets, eps);
    json approx = json::array();
    for (auto& a : r.approximants) approx.push_back(rational_string(a));
    return json{{"f", rational_string(r.f)},
                {"approximants", approx},
                {"runge_product", to_json(r.runge_product)}};
}

json run_cartan(const json& in, const magnitude& tol) {
    cousin_system_z sys = system_from_json(in.at("system"), "system");
    rat_matrix A = matrix_from_json(in.at("A"), "A");
    rat eps0 = rat_from_json(in.value("eps0", json("1/8")), "eps0");
    auto c = cartan_factor(sys, A, tol, eps0);
    return json{{"C_minus", to_json(c.C_minus)},
                {"C_plus", to_json(c.C_plus)},
                {"residual", to_json(c.residual_bound)},
                {"defect", to_json(c.defect_in)},
                {"bound_minus", to_json(c.bound_minus)},
                {"bound_plus", to_json(c.bound_plus)},
                {"iterations", c.iterations}};
}

json run_glue(const json& in, const magnitude& tol) {
    cousin_system_z sys = system_from_json(in.at("system"), "system");
    auto vec = [&](const char* key) {
        std::vector<rat> v;
        size_t i = 0;
        for (auto& t : in.at(key))
            v.push_back(rat_from_json(t, std::string(key) + "[" + std::to_string(i++) + "]"));
        return v;
    };
    rat_matrix U = matrix_from_json(in.at("U"), "U");
    rat_matrix V = matrix_from_json(in.at("V"), "V");
    rat_matrix Ubar = matrix_from_json(in.at("Ubar"), "Ubar");
    rat eps0 = rat_from_json(in.value("eps0", json("1/8")), "eps0");
    auto g = glue_generators(sys, vec("Tminus"), vec("Tplus"), U, V, Ubar, tol, eps0);
    json sm = json::array(), sp = json::array();
    for (auto& x : g.S_minus) sm.push_back(rational_string(x));
    for (auto& x : g.S_plus_expr) sp.push_back(rational_string(x));
    return json{{"S_minus", sm},
                {"S_plus_expr", sp},
                {"agreement", to_json(g.agreement)},
                {"C_minus_det", rational_string(g.c_minus_det)},
                {"residual", to_json(g.factorization.residual_bound)}};
}

json run_series(const json& in) {
    std::string op = in.at("op").get<std::string>();
    if (op == "norm") {
        disk_element f = disk_element_from_json(in.at("f"), "f");
        rat t = rat_from_json(in.at("t"), "t");
        auto n = norm_disk(f, t);
        return json{{"lower", to_json(n.lower)}, {"upper", to_json(n.upper)}};
    }
    if (op == "norm-annulus") {
        disk_element f = disk_element_from_json(in.at("f"), "f");
        rat s = rat_from_json(in.at("s"), "s");
        rat t = rat_from_json(in.at("t"), "t");
        auto n = norm_annulus(f, s, t);
        return json{{"lower", to_json(n.lower)}, {"upper", to_json(n.upper)}};
    }
    if (op == "add" || op == "mul") {
        disk_element f = disk_element_from_json(in.at("f"), "f");
        disk_element g = disk_element_from_json(in.at("g"), "g");
        return json{{"result", to_json(op == "add" ? add(f, g) : mul(f, g))}};
    }
    if (op == "restrict") {
        disk_element f = disk_element_from_json(in.at("f"), "f");
        rat u = rat_from_json(in.at("u"), "u");
        rat v = rat_from_json(in.at("v"), "v");
        auto r = restrict_annulus(f, u, v);
        return json{{"result", to_json(r.restricted)},
                    {"factor_bound", to_json(r.factor_bound)},
                    {"per_coefficient_certified", r.per_coefficient_certified}};
    }
    throw precondition_error("op: unknown series op " + op);
}

std::string render_star_svg(long branches) {
    if (branches < 1) throw precondition_error("branches must be >= 1");
    // ray k has length L/k at angle (k-3) pi / 10, like the star figure;
    // coordinates at fixed precision with deterministic rounding
    std::ostringstream os;
    const long W = 640, H = 640, cx = 320, cy = 320;
    const double L = 300.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
       << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "  <circle class=\"center\" cx=\"" << cx << "\" cy=\"" << cy
       << "\" r=\"4\" fill=\"black\"/>\n";
    os << "  <text x=\"" << cx + 8 << "\" y=\"" << cy + 16 << "\">a_0</text>\n";
    mpfr_t ang, c, s;
    mpfr_init2(ang, 128);
    mpfr_init2(c, 128);
    mpfr_init2(s, 128);
    std::vector<std::string> labels;
    labels.push_back("a_inf");
    // finite branches labeled by the primes in order
    bigint p = 1;
    for (long k = 2; k <= branches; ++k) {
        do { p += 1; } while (!is_prime(p));
        labels.push_back("a_" + p.get_str());
    }
    for (long k = 1; k <= branches; ++k) {
        mpfr_const_pi(ang, MPFR_RNDN);
        mpfr_mul_si(ang, ang, k - 3, MPFR_RNDN);
        mpfr_div_si(ang, ang, 10, MPFR_RNDN);
        mpfr_cos(c, ang, MPFR_RNDN);
        mpfr_sin(s, ang, MPFR_RNDN);
        double x = cx + (L / k) * mpfr_get_d(c, MPFR_RNDN);
        double y = cy + (L / k) * mpfr_get_d(s, MPFR_RNDN);
        char bx[64], by[64];
        snprintf(bx, sizeof bx, "%.3f", x);
        snprintf(by, sizeof by, "%.3f", y);
        os << "  <line class=\"ray\" x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << bx
           << "\" y2=\"" << by << "\" stroke=\"black\"/>\n";
        os << "  <circle class=\"tip\" cx=\"" << bx << "\" cy=\"" << by
           << "\" r=\"3\" fill=\"black\"/>\n";
        os << "  <text x=\"" << bx << "\" y=\"" << by << "\">" << labels[k - 1]
           << "</text>\n";
    }
    mpfr_clear(ang);
    mpfr_clear(c);
    mpfr_clear(s);
    os << "</svg>\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact kernel for analytic geometry over Z"};
    app.require_subcommand(1);

    long precision_bits = 256;
    long window = 64;
    std::string tol_str = "2^-40";
    std::string format = "json";
    std::string in_file;
    app.add_option("--precision-bits", precision_bits,
                   "comparison precision ceiling in bits (max 4096)");
    app.add_option("--window", window, "default truncation window");
    app.add_option("--tol", tol_str, "tolerance, e.g. 2^-40");
    app.add_option("--format", format, "json|svg (plot-spectrum)");
    app.add_option("--in", in_file, "read the JSON payload from a file");

    std::vector<std::string> names = {"eval",   "supnorm", "path",   "newton",
                                      "region", "divide",  "prepare", "cousin",
                                      "runge",  "cartan",  "glue",    "series",
                                      "plot-spectrum"};
    std::map<std::string, CLI::App*> subs;
    for (auto& n : names) subs[n] = app.add_subcommand(n);

    CLI11_PARSE(app, argc, argv);
    if (precision_bits > 4096) precision_bits = 4096;
    if (precision_bits < 64) precision_bits = 64;
    magnitude::default_ceiling_bits = precision_bits;
    disk_element_default_window = window;

    std::string chosen;
    for (auto& [n, sc] : subs)
        if (sc->parsed()) chosen = n;

    try {
        magnitude tol = parse_tolerance(tol_str);
        json in;
        if (chosen != "plot-spectrum" || !in_file.empty() || true) {
            std::string text;
            if (!in_file.empty()) {
                std::ifstream f(in_file);
                if (!f) throw precondition_error("cannot open " + in_file);
                std::stringstream ss;
                ss << f.rdbuf();
                text = ss.str();
            } else {
                std::stringstream ss;
                ss << std::cin.rdbuf();
                text = ss.str();
            }
            if (text.empty()) text = "{}";
            in = json::parse(text, nullptr, true, true);
        }

        json result;
        if (chosen == "eval") result = run_eval(in);
        else if (chosen == "supnorm") result = run_supnorm(in);
        else if (chosen == "path") result = run_path(in);
        else if (chosen == "newton") result = run_newton(in);
        else if (chosen == "region") result = run_region(in);
        else if (chosen == "divide") result = run_divide(in);
        else if (chosen == "prepare") result = run_prepare(in);
        else if (chosen == "cousin") result = run_cousin(in);
        else if (chosen == "runge") result = run_runge(in);
        else if (chosen == "cartan") result = run_cartan(in, tol);
        else if (chosen == "glue") result = run_glue(in, tol);
        else if (chosen == "series") result = run_series(in);
        else if (chosen == "plot-spectrum") {
            long branches = in.value("branches", 12L);
            std::string svg = render_star_svg(branches);
            if (format == "svg") {
                std::cout << svg;
                return 0;
            }
            result = json{{"svg", svg}};
        }

        json envelope{{"berk", "0.1.0"}, {"result", result}};
        std::cout << envelope.dump(2) << "\n";
        return 0;
    } catch (const unresolved_comparison& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "unresolved"}}.dump() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "schema"}}.dump() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
        return 2;
    }
}
