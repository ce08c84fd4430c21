#include "berk/json_io.hpp"

namespace berk {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw precondition_error(path + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) bad(path, std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace

json to_json(const rat& q) { return rational_string(q); }

rat rat_from_json(const json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const precondition_error& e) {
        bad(path, e.what());
    }
}

json to_json(const ext_rat& e) {
    if (e.infinite) return "inf";
    return rational_string(e.value);
}

ext_rat ext_rat_from_json(const json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "inf") return ext_rat::inf();
    return ext_rat(rat_from_json(j, path));
}

json to_json(const place& p) { return p.str(); }

place place_from_json(const json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a place string");
    std::string s = j.get<std::string>();
    if (s == "inf") return place::infinite();
    if (s == "triv") return place::trivial();
    if (s.rfind("p:", 0) == 0) {
        bigint p;
        if (mpz_set_str(p.get_mpz_t(), s.substr(2).c_str(), 10) != 0)
            bad(path, "bad prime in place: " + s);
        try {
            return place::finite(p);
        } catch (const precondition_error& e) {
            bad(path, e.what());
        }
    }
    bad(path, "unknown place: " + s);
}

json to_json(const base_point& b) {
    return json{{"place", to_json(b.pl)}, {"eps", to_json(b.eps)}};
}

base_point base_point_from_json(const json& j, const std::string& path) {
    place pl = place_from_json(need(j, "place", path), path + ".place");
    ext_rat e = ext_rat_from_json(need(j, "eps", path), path + ".eps");
    try {
        return base_point(pl, e);
    } catch (const precondition_error& ex) {
        bad(path, ex.what());
    }
}

json to_json(const magnitude& m) {
    if (m.is_zero()) return json{{"zero", true}};
    json factors = json::array();
    for (auto& [b, e] : m.factors())
        factors.push_back(json::array({b.get_str(), rational_string(e)}));
    return json{{"factors", factors}};
}

magnitude magnitude_from_json(const json& j, const std::string& path) {
    if (j.is_object() && j.contains("zero")) {
        if (j.at("zero").is_boolean() && j.at("zero").get<bool>()) return magnitude::zero();
        bad(path, "zero flag must be true");
    }
    const json& fs = need(j, "factors", path);
    if (!fs.is_array()) bad(path + ".factors", "expected an array");
    magnitude m = magnitude::one();
    size_t i = 0;
    for (auto& f : fs) {
        std::string p = path + ".factors[" + std::to_string(i++) + "]";
        if (!f.is_array() || f.size() != 2) bad(p, "expected [base, exponent]");
        rat base = rat_from_json(f.at(0), p + "[0]");
        rat expo = rat_from_json(f.at(1), p + "[1]");
        if (base <= 0) bad(p, "base must be positive");
        m = m * magnitude::pow_of(base, expo);
    }
    return m;
}

json to_json(const star_compact& V) {
    json caps = json::object();
    for (auto& [pl, cap] : V.caps) caps[pl.str()] = rational_string(cap);
    json out{{"caps", caps}};
    if (V.cap_all_finite) out["cap_all_finite"] = rational_string(*V.cap_all_finite);
    return out;
}

star_compact star_compact_from_json(const json& j, const std::string& path) {
    star_compact V;
    const json& caps = need(j, "caps", path);
    if (!caps.is_object()) bad(path + ".caps", "expected an object");
    for (auto it = caps.begin(); it != caps.end(); ++it) {
        place pl = place_from_json(json(it.key()), path + ".caps key");
        V.caps[pl] = rat_from_json(it.value(), path + ".caps." + it.key());
    }
    if (j.contains("cap_all_finite"))
        V.cap_all_finite = rat_from_json(j.at("cap_all_finite"), path + ".cap_all_finite");
    try {
        V.validate();
    } catch (const precondition_error& e) {
        bad(path, e.what());
    }
    return V;
}

json to_json(const poly_q& P) {
    json coeffs = json::array();
    for (auto& c : P.coeffs()) coeffs.push_back(rational_string(c));
    return json{{"coeffs", coeffs}};
}

poly_q poly_from_json(const json& j, const std::string& path) {
    const json& cs = need(j, "coeffs", path);
    if (!cs.is_array()) bad(path + ".coeffs", "expected an array");
    std::vector<rat> v;
    size_t i = 0;
    for (auto& c : cs) v.push_back(rat_from_json(c, path + ".coeffs[" + std::to_string(i++) + "]"));
    return poly_q(std::move(v));
}

json to_json(const fiber_point& x) {
    switch (x.k) {
        case fiber_point::kind::rigid:
            return json{{"rigid", json{{"center", rational_string(x.center)}}}};
        case fiber_point::kind::ball:
            return json{{"ball", json{{"center", rational_string(x.center)},
                                      {"radius", rational_string(x.radius)}}}};
        case fiber_point::kind::arch:
            return json{{"arch", json{{"re", rational_string(x.re)},
                                      {"im", rational_string(x.im)}}}};
    }
    throw error("unreachable");
}

fiber_point fiber_point_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || j.size() != 1) bad(path, "expected one of rigid/ball/arch");
    if (j.contains("rigid"))
        return fiber_point::rigid(rat_from_json(need(j.at("rigid"), "center", path + ".rigid"),
                                                path + ".rigid.center"));
    if (j.contains("ball")) {
        const json& b = j.at("ball");
        rat c = rat_from_json(need(b, "center", path + ".ball"), path + ".ball.center");
        rat r = rat_from_json(need(b, "radius", path + ".ball"), path + ".ball.radius");
        if (r <= 0) bad(path + ".ball.radius", "radius must be positive");
        return fiber_point::ball(c, r);
    }
    if (j.contains("arch")) {
        const json& a = j.at("arch");
        return fiber_point::arch(rat_from_json(need(a, "re", path + ".arch"), path + ".arch.re"),
                                 rat_from_json(need(a, "im", path + ".arch"), path + ".arch.im"));
    }
    bad(path, "expected one of rigid/ball/arch");
}

json to_json(const lemniscate_region& R) {
    json out{{"P", to_json(R.P)},
             {"lo", to_json(R.lo)},
             {"open_lo", R.open_lo},
             {"open_hi", R.open_hi}};
    if (R.has_hi) out["hi"] = to_json(R.hi);
    else out["hi"] = "inf";
    return out;
}

lemniscate_region region_from_json(const json& j, const std::string& path) {
    lemniscate_region R;
    R.P = poly_from_json(need(j, "P", path), path + ".P");
    R.lo = magnitude_from_json(need(j, "lo", path), path + ".lo");
    const json& hi = need(j, "hi", path);
    if (hi.is_string() && hi.get<std::string>() == "inf") {
        R.has_hi = false;
    } else {
        R.hi = magnitude_from_json(hi, path + ".hi");
        R.has_hi = true;
    }
    if (j.contains("open_lo")) R.open_lo = j.at("open_lo").get<bool>();
    if (j.contains("open_hi")) R.open_hi = j.at("open_hi").get<bool>();
    return R;
}

json to_json(const series_context& c) {
    return json{{"place", to_json(c.base.pl)},
                {"eps", to_json(c.base.eps)},
                {"s", rational_string(c.s)},
                {"t", rational_string(c.t)}};
}

series_context series_context_from_json(const json& j, const std::string& path) {
    series_context c;
    place pl = place_from_json(need(j, "place", path), path + ".place");
    ext_rat e = ext_rat_from_json(need(j, "eps", path), path + ".eps");
    try {
        c.base = base_point(pl, e);
    } catch (const precondition_error& ex) {
        bad(path, ex.what());
    }
    c.s = rat_from_json(need(j, "s", path), path + ".s");
    c.t = rat_from_json(need(j, "t", path), path + ".t");
    if (j.contains("flavor")) {
        std::string fl = j.at("flavor").get<std::string>();
        if (fl == "max") c.flavor = norm_flavor::max;
        else if (fl == "sum") c.flavor = norm_flavor::sum;
        else bad(path + ".flavor", "expected max|sum");
    } else {
        c.flavor = c.base.ultrametric() ? norm_flavor::max : norm_flavor::sum;
    }
    return c;
}

json to_json(const disk_element& f) {
    json coeffs = json::object();
    for (auto& [n, c] : f.coeffs) coeffs[std::to_string(n)] = rational_string(c);
    return json{{"coeffs", coeffs},
                {"window", json::array({f.window_lo, f.window_hi})},
                {"tail", to_json(f.tail)},
                {"flavor", f.ctx.flavor == norm_flavor::max ? "max" : "sum"},
                {"context", to_json(f.ctx)}};
}

long disk_element_default_window = 64;

disk_element disk_element_from_json(const json& j, const std::string& path) {
    disk_element f;
    f.ctx = series_context_from_json(need(j, "context", path), path + ".context");
    if (j.contains("flavor")) {
        std::string fl = j.at("flavor").get<std::string>();
        if (fl == "max") f.ctx.flavor = norm_flavor::max;
        else if (fl == "sum") f.ctx.flavor = norm_flavor::sum;
        else bad(path + ".flavor", "expected max|sum");
    }
    try {
        f.ctx.validate();
    } catch (const precondition_error& ex) {
        bad(path, ex.what());
    }
    if (j.contains("window")) {
        const json& w = j.at("window");
        if (!w.is_array() || w.size() != 2) bad(path + ".window", "expected [lo, hi]");
        f.window_lo = w.at(0).get<long>();
        f.window_hi = w.at(1).get<long>();
    } else {
        f.window_lo = f.ctx.s == 0 ? 0 : -disk_element_default_window;
        f.window_hi = disk_element_default_window;
    }
    const json& cs = need(j, "coeffs", path);
    if (!cs.is_object()) bad(path + ".coeffs", "expected an object");
    for (auto it = cs.begin(); it != cs.end(); ++it) {
        long n;
        try {
            n = std::stol(it.key());
        } catch (...) {
            bad(path + ".coeffs", "bad exponent key: " + it.key());
        }
        rat c = rat_from_json(it.value(), path + ".coeffs." + it.key());
        if (c != 0) f.coeffs[n] = c;
    }
    if (j.contains("tail")) f.tail = magnitude_from_json(j.at("tail"), path + ".tail");
    try {
        f.validate();
    } catch (const precondition_error& ex) {
        bad(path, ex.what());
    }
    return f;
}

json to_json(const branch_segment& s) {
    return json{{"place", to_json(s.pl)},
                {"from", to_json(s.eps_from)},
                {"to", to_json(s.eps_to)}};
}

json to_json(const split_result& s) {
    return json{{"f_minus", rational_string(s.f_minus)},
                {"f_plus", rational_string(s.f_plus)},
                {"bounds", json{{"minus", to_json(s.bound_minus)},
                                {"plus", to_json(s.bound_plus)}}},
                {"D", rational_string(s.D)}};
}

json to_json(const division_result& d) {
    json R = json::array();
    for (auto& c : d.R.coeffs()) R.push_back(rational_string(c));
    return json{{"Q", to_json(d.Q)},
                {"R", json{{"coeffs", R}}},
                {"n", d.n},
                {"certs", json{{"normF", to_json(d.norm_F)},
                               {"normQ", to_json(d.norm_Q)},
                               {"normR", to_json(d.norm_R)},
                               {"contraction", rational_string(d.contraction)}}}};
}

json to_json(const rat_matrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols; ++j) row.push_back(rational_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

rat_matrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) bad(path, "expected a nonempty array of rows");
    rat_matrix m;
    m.rows = j.size();
    m.cols = j.at(0).size();
    if (m.cols == 0) bad(path, "empty row");
    m.a.assign(m.rows * m.cols, rat(0));
    for (size_t i = 0; i < m.rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || row.size() != m.cols) bad(path, "ragged matrix");
        for (size_t k = 0; k < m.cols; ++k)
            m.at(i, k) = rat_from_json(row.at(k), path + "[" + std::to_string(i) + "][" +
                                                      std::to_string(k) + "]");
    }
    return m;
}

} // namespace berk
