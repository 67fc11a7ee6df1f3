#include "padic/io.hpp"

namespace padic {

mpz_class mpz_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return mpz_class(j.get<long>());
        if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
    } catch (const std::exception&) {
        throw ParseError("bad integer literal: " + j.dump());
    }
    throw ParseError("expected an integer or decimal string, got " + j.dump());
}

json ring_to_json(const Ring& ring) {
    json j;
    j["p"] = ring.p();
    j["precision"] = ring.precision();
    if (ring.kind() != ExtensionKind::trivial) {
        j["kind"] = to_string(ring.kind());
        json mod = json::array();
        for (const auto& c : ring.modulus()) mod.push_back(c.get_str());
        j["modulus"] = mod;
    }
    return j;
}

RingPtr ring_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("ring context must be a JSON object");
    if (!j.contains("p")) throw ParseError("ring context needs \"p\"");
    unsigned long p = mpz_from_json(j.at("p")).get_ui();
    unsigned precision = j.contains("precision") ? j.at("precision").get<unsigned>() : 20;
    if (!j.contains("modulus")) return Ring::zp(p, precision);
    if (!j.contains("kind")) throw ParseError("extension ring context needs \"kind\"");
    std::string kind_s = j.at("kind").get<std::string>();
    ExtensionKind kind;
    if (kind_s == "unramified")
        kind = ExtensionKind::unramified;
    else if (kind_s == "eisenstein")
        kind = ExtensionKind::eisenstein;
    else if (kind_s == "trivial")
        kind = ExtensionKind::trivial;
    else
        throw ParseError("unknown extension kind \"" + kind_s + "\"");
    std::vector<mpz_class> modulus;
    for (const auto& c : j.at("modulus")) modulus.push_back(mpz_from_json(c));
    try {
        return Ring::make(p, precision, std::move(modulus), kind);
    } catch (const Error& e) {
        throw ParseError(std::string("invalid ring context: ") + e.what());
    }
}

RingElement element_from_json(const json& j, const RingPtr& ring) {
    if (j.is_array()) {
        std::vector<mpz_class> coords;
        for (const auto& c : j) coords.push_back(mpz_from_json(c));
        if (coords.size() > ring->degree())
            throw ParseError("element has more coordinates than the ring degree");
        coords.resize(ring->degree(), mpz_class(0));
        return RingElement(ring, std::move(coords));
    }
    return RingElement(ring, mpz_from_json(j));
}

json element_to_json(const RingElement& e) {
    if (e.ring()->degree() == 1) return e.coeffs()[0].get_str();
    json a = json::array();
    for (const auto& c : e.coeffs()) a.push_back(c.get_str());
    return a;
}

json series_to_json(const TruncatedSeries& s, bool include_context) {
    json j;
    if (include_context) j["context"] = ring_to_json(*s.ring());
    j["trunc"] = s.trunc();
    json coeffs = json::array();
    for (unsigned i = 0; i <= s.trunc(); ++i) coeffs.push_back(element_to_json(s.coeff(i)));
    j["coeffs"] = coeffs;
    return j;
}

TruncatedSeries series_from_json(const json& j, RingPtr fallback_ring,
                                 std::optional<unsigned> fallback_trunc) {
    const json* coeffs = nullptr;
    RingPtr ring = fallback_ring;
    std::optional<unsigned> trunc = fallback_trunc;
    if (j.is_array()) {
        coeffs = &j;
    } else if (j.is_object()) {
        if (!j.contains("coeffs")) throw ParseError("series object needs \"coeffs\"");
        coeffs = &j.at("coeffs");
        if (j.contains("context")) ring = ring_from_json(j.at("context"));
        if (j.contains("trunc")) trunc = j.at("trunc").get<unsigned>();
    } else {
        throw ParseError("series must be an object or a coefficient array");
    }
    if (!ring) throw ParseError("series has no ring context and no default was given");
    if (!coeffs->is_array()) throw ParseError("series coeffs must be an array");
    unsigned m = trunc ? *trunc
                       : (coeffs->empty() ? 0 : static_cast<unsigned>(coeffs->size() - 1));
    TruncatedSeries s(ring, m);
    unsigned i = 0;
    for (const auto& c : *coeffs) {
        if (i > m)
            throw ParseError("series lists " + std::to_string(coeffs->size()) +
                             " coefficients but trunc is " + std::to_string(m));
        s.set_coeff(i++, element_from_json(c, ring));
    }
    return s;
}

json formal_group_to_json(const FormalGroupLaw& F, bool include_context) {
    json j;
    if (include_context) j["context"] = ring_to_json(*F.law.ring());
    j["m_total"] = F.law.trunc();
    json rows = json::array();
    for (unsigned r = 0; r <= F.law.trunc(); ++r) {
        json row = json::array();
        for (unsigned i = r + 1; i-- > 0;) row.push_back(element_to_json(F.law.coeff(i, r - i)));
        rows.push_back(row);
    }
    j["coeffs"] = rows;
    return j;
}

FormalGroupLaw formal_group_from_json(const json& j, RingPtr fallback_ring) {
    if (!j.is_object() || !j.contains("coeffs"))
        throw ParseError("formal group must be an object with \"coeffs\"");
    RingPtr ring = j.contains("context") ? ring_from_json(j.at("context")) : fallback_ring;
    if (!ring) throw ParseError("formal group has no ring context and no default was given");
    const json& rows = j.at("coeffs");
    if (!rows.is_array() || rows.empty()) throw ParseError("formal group coeffs must be rows");
    unsigned m = j.contains("m_total") ? j.at("m_total").get<unsigned>()
                                       : static_cast<unsigned>(rows.size() - 1);
    BivariateSeries law(ring, m);
    for (unsigned r = 0; r < rows.size() && r <= m; ++r) {
        const json& row = rows.at(r);
        if (!row.is_array() || row.size() != r + 1)
            throw ParseError("formal group row " + std::to_string(r) + " must list " +
                             std::to_string(r + 1) + " coefficients");
        for (unsigned k = 0; k <= r; ++k)
            law.set_coeff(r - k, k, element_from_json(row.at(k), ring));
    }
    return FormalGroupLaw{law};
}

json polygon_to_json(const NewtonPolygon& np) {
    json j;
    json segs = json::array();
    for (const auto& s : np.segments)
        segs.push_back({{"slope", s.slope.get_str()}, {"length", s.length}});
    j["segments"] = segs;
    json rv = json::array();
    for (const auto& [v, c] : root_valuations(np)) rv.push_back(json::array({v.get_str(), c}));
    j["root_valuations"] = rv;
    json pts = json::array();
    for (const auto& [i, v] : np.points) pts.push_back(json::array({i, v.get_str()}));
    j["points"] = pts;
    if (np.stripped_power) j["stripped_power"] = np.stripped_power;
    return j;
}

namespace {

json multiset_to_json(const ValuationMultiset& ms) {
    json a = json::array();
    for (const auto& [v, c] : ms) a.push_back(json::array({v.get_str(), c}));
    return a;
}

}  // namespace

json ladder_to_json(const std::vector<RootLadderLevel>& levels) {
    json a = json::array();
    for (const auto& lvl : levels)
        a.push_back({{"level", lvl.level},
                     {"new_roots", multiset_to_json(lvl.new_roots)},
                     {"new_root_count", lvl.new_root_count},
                     {"cumulative_count", lvl.cumulative_count}});
    return a;
}

json torsion_ladder_to_json(const std::vector<TorsionLevel>& levels) {
    json a = json::array();
    for (const auto& lvl : levels)
        a.push_back({{"level", lvl.base.level},
                     {"new_roots", multiset_to_json(lvl.base.new_roots)},
                     {"new_root_count", lvl.base.new_root_count},
                     {"cumulative_count", lvl.base.cumulative_count},
                     {"predicted_count", lvl.predicted_count},
                     {"predicted_valuation", lvl.predicted_valuation.get_str()},
                     {"matches_prediction", lvl.matches_prediction}});
    return a;
}

json preper_ladder_to_json(const std::vector<PreperLevel>& levels) {
    json a = json::array();
    for (const auto& lvl : levels) {
        json o = {{"level", lvl.level}, {"all_points_fixed", lvl.all_points_fixed}};
        if (!lvl.all_points_fixed) o["root_valuations"] = multiset_to_json(lvl.root_valuations);
        a.push_back(o);
    }
    return a;
}

json padic_iterate_to_json(const PadicIterate& it) {
    json steps = json::array();
    for (const auto& s : it.steps) {
        json o;
        o["level"] = s.level;
        if (s.x_order)
            o["x_order"] = *s.x_order;
        else
            o["x_order"] = nullptr;
        o["p_order"] = s.p_order.str();
        o["joint_order"] = s.joint_order.str();
        steps.push_back(o);
    }
    return {{"value", series_to_json(it.value)},
            {"steps", steps},
            {"cauchy_nondecreasing", it.cauchy_nondecreasing}};
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
        case CheckStatus::finding: return "finding";
    }
    return "?";
}

json certificate_to_json(const Certificate& cert) {
    json checks = json::array();
    for (const auto& c : cert.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    return {{"ok", cert.ok()}, {"checks", checks}};
}

json stability_to_json(const StabilityReport& rep) {
    json j;
    j["derivative_at_zero"] = element_to_json(rep.derivative_at_zero);
    j["is_zero"] = rep.is_zero;
    j["is_root_of_unity"] = rep.is_root_of_unity;
    if (rep.root_of_unity_order) j["root_of_unity_order"] = *rep.root_of_unity_order;
    j["precision_caveat"] = rep.precision_caveat;
    j["is_stable"] = rep.is_stable;
    j["is_invertible"] = rep.is_invertible;
    j["is_noninvertible_finite_height"] = rep.is_noninvertible_finite_height;
    if (rep.wideg) j["weierstrass_degree"] = *rep.wideg;
    return j;
}

DynamicalPackage package_from_json(const json& j, RingPtr default_ring,
                                   std::optional<unsigned> default_trunc) {
    if (!j.is_object()) throw ParseError("package must be a JSON object");
    RingPtr ring = j.contains("context") ? ring_from_json(j.at("context")) : default_ring;
    std::optional<unsigned> trunc = default_trunc;
    if (j.contains("trunc")) trunc = j.at("trunc").get<unsigned>();
    if (!j.contains("f") || !j.contains("u"))
        throw ParseError("package needs at least \"f\" and \"u\"");
    auto get_series = [&](const char* key) {
        return series_from_json(j.at(key), ring, trunc);
    };
    TruncatedSeries f = get_series("f");
    TruncatedSeries u = get_series("u");
    DynamicalPackage pkg{f, u, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    if (j.contains("h")) pkg.h = get_series("h");
    if (j.contains("lubin_tate_f")) pkg.lubin_tate_f = get_series("lubin_tate_f");
    if (j.contains("u_F")) pkg.u_F = get_series("u_F");
    if (j.contains("formal_group")) {
        pkg.F = formal_group_from_json(j.at("formal_group"), ring);
    } else if (pkg.lubin_tate_f) {
        unsigned m_total = j.contains("m_total") ? j.at("m_total").get<unsigned>() : 8;
        try {
            LubinTateData lt = LubinTateData::from_series(*pkg.lubin_tate_f);
            pkg.F = lubin_tate_group(lt, m_total);
        } catch (const Error&) {
            // lubin_tate_f that is not literally Lubin-Tate data stays a
            // plain intertwined series; the package reports the group as
            // not supplied
        }
    }
    return pkg;
}

}  // namespace padic
