#pragma once

#include <json.hpp>

#include "padic/dynamics.hpp"

namespace padic {

using json = nlohmann::json;

// Ring context: {"p": 3, "precision": 40, "modulus": ["c0",...,"1"],
// "kind": "eisenstein"}; the trivial extension omits modulus and kind.
// Large integers travel as decimal strings.
json ring_to_json(const Ring& ring);
RingPtr ring_from_json(const json& j);

// Series: {"context": <ring>, "trunc": 32, "coeffs": ["0","9","6","1"]};
// coeffs[i] is a decimal string for base-ring elements or an array of d
// strings for extension elements.  A bare array is accepted when a fallback
// ring/truncation is supplied.
json series_to_json(const TruncatedSeries& s, bool include_context = true);
TruncatedSeries series_from_json(const json& j, RingPtr fallback_ring = nullptr,
                                 std::optional<unsigned> fallback_trunc = std::nullopt);

// Formal group: triangular coefficient rows by total degree, row r listing
// c_{ij}, i + j = r, with i descending.
json formal_group_to_json(const FormalGroupLaw& F, bool include_context = true);
FormalGroupLaw formal_group_from_json(const json& j, RingPtr fallback_ring = nullptr);

json polygon_to_json(const NewtonPolygon& np);
json ladder_to_json(const std::vector<RootLadderLevel>& levels);
json torsion_ladder_to_json(const std::vector<TorsionLevel>& levels);
json preper_ladder_to_json(const std::vector<PreperLevel>& levels);
json padic_iterate_to_json(const PadicIterate& it);
json certificate_to_json(const Certificate& cert);
json stability_to_json(const StabilityReport& rep);

// Package: {"context": ..., "trunc": ..., "f": ..., "u": ..., "h": ...,
// "lubin_tate_f": ..., "u_F": ..., "formal_group": ...}.  Series members may
// be bare coefficient arrays inheriting context and trunc.  When
// "formal_group" is absent but "lubin_tate_f" is present, the group is built
// from it at total degree "m_total" (default 8).
DynamicalPackage package_from_json(const json& j, RingPtr default_ring,
                                   std::optional<unsigned> default_trunc);

mpz_class mpz_from_json(const json& j);
RingElement element_from_json(const json& j, const RingPtr& ring);
json element_to_json(const RingElement& e);

}  // namespace padic
