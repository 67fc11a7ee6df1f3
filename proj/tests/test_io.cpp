#include <doctest.h>

#include "padic/battery.hpp"
#include "padic/io.hpp"

using namespace padic;

TEST_CASE("ring context JSON round trips") {
    for (RingPtr r :
         {Ring::zp(3, 20),
          Ring::make(3, 12, {mpz_class(1), mpz_class(0), mpz_class(1)}, ExtensionKind::unramified),
          Ring::make(3, 12, {mpz_class(3), mpz_class(0), mpz_class(1)},
                     ExtensionKind::eisenstein)}) {
        RingPtr back = ring_from_json(ring_to_json(*r));
        CHECK(*back == *r);
    }
    CHECK_THROWS_AS(ring_from_json(json::parse("{\"precision\": 4}")), ParseError);
    CHECK_THROWS_AS(ring_from_json(json::parse("{\"p\": 3, \"modulus\": [\"1\",\"1\"]}")),
                    ParseError);
}

TEST_CASE("series JSON round trips, including extension coefficients") {
    RingPtr r = Ring::zp(3, 40);
    TruncatedSeries f = TruncatedSeries::from_integers(r, {0, 9, 6, 1}, 6);
    TruncatedSeries back = series_from_json(series_to_json(f));
    CHECK(back == f);

    RingPtr q = Ring::make(3, 8, {mpz_class(1), mpz_class(0), mpz_class(1)},
                           ExtensionKind::unramified);
    TruncatedSeries g(q, 3);
    g.set_coeff(1, RingElement(q, {mpz_class(2), mpz_class(5)}));
    g.set_coeff(3, RingElement::generator(q));
    CHECK(series_from_json(series_to_json(g)) == g);

    // bare coefficient arrays inherit the fallback context and truncation
    TruncatedSeries inline_form = series_from_json(json::parse("[\"0\",\"3\",\"0\",\"1\"]"), r, 8);
    CHECK(inline_form == TruncatedSeries::from_integers(r, {0, 3, 0, 1}, 8));

    // decimal strings survive beyond 64-bit
    RingPtr big = Ring::zp(3, 64);
    json j = series_to_json(TruncatedSeries::from_integers(big, {0, 1}, 1));
    j["coeffs"][1] = "2289122546861674989771899392854";  // 2 * 3^63
    TruncatedSeries parsed = series_from_json(j);
    CHECK(parsed.coeff(1).valuation() == Valuation(63));

    CHECK_THROWS_AS(series_from_json(json::parse("{\"coeffs\": [\"x\"]}"), r, 4), ParseError);
    CHECK_THROWS_AS(series_from_json(json::parse("[\"1\"]")), ParseError);  // no context anywhere
}

TEST_CASE("formal group JSON round trips") {
    RingPtr r = Ring::zp(3, 10);
    LubinTateData lt =
        LubinTateData::from_series(TruncatedSeries::from_integers(r, {0, 3, 0, 1}, 6));
    FormalGroupLaw F = lubin_tate_group(lt, 6);
    FormalGroupLaw back = formal_group_from_json(formal_group_to_json(F));
    CHECK(back.law == F.law);
}

TEST_CASE("polygon JSON matches the documented shape") {
    RingPtr r = Ring::zp(3, 20);
    TruncatedSeries g = TruncatedSeries::from_integers(
        r, {0, 81, 540, 1386, 1782, 1287, 546, 135, 18, 1}, 9);
    json j = polygon_to_json(newton_polygon(g, true));
    REQUIRE(j["segments"].size() == 2);
    CHECK(j["segments"][0]["slope"] == "-1");
    CHECK(j["segments"][0]["length"] == 2);
    CHECK(j["segments"][1]["slope"] == "-1/3");
    CHECK(j["segments"][1]["length"] == 6);
    CHECK(j["root_valuations"][1][0] == "1/3");
    CHECK(j["root_valuations"][1][1] == 6);
}

TEST_CASE("package JSON: the assembled worked package verifies") {
    json pkg = json::parse(R"({
        "context": {"p": 3, "precision": 20},
        "trunc": 24,
        "f": ["0","9","6","1"],
        "u": ["0","4","1"],
        "h": ["0","0","1"],
        "lubin_tate_f": ["0","3","0","1"],
        "m_total": 6
    })");
    DynamicalPackage d = package_from_json(pkg, nullptr, std::nullopt);
    CHECK(d.F.has_value());  // built from lubin_tate_f
    Certificate cert = package_verify(d);
    CHECK(cert.ok());

    CHECK_THROWS_AS(package_from_json(json::parse("{\"f\": [\"0\",\"1\"]}"), nullptr, std::nullopt),
                    ParseError);
}

TEST_CASE("battery output is deterministic for a fixed seed") {
    BatteryOptions opts;
    opts.precision = 12;
    opts.trunc = 24;
    opts.property_cases = 5;
    opts.rigidity_count = 8;
    opts.seed = 31337;
    std::string a = certificate_to_json(run_example_battery(opts)).dump();
    std::string b = certificate_to_json(run_example_battery(opts)).dump();
    CHECK(a == b);
}
