#pragma once

#include <nlohmann/json.hpp>
#include <iosfwd>
#include <span>
#include <vector>

#include "satotate/block_matrix.hpp"
#include "satotate/charpoly.hpp"
#include "satotate/moments.hpp"
#include "satotate/sampling.hpp"
#include "satotate/stgroup.hpp"

namespace satotate {

using Json = nlohmann::ordered_json;

// {"g": n, "blocks": [[code, ...], ...]}. Blocks without a short code are written as
// {"level": N, "entries": [c00, c01, c10, c11]}, each entry a list of rational strings.
Json to_json(const BlockUnitaryMatrix& m);
BlockUnitaryMatrix block_matrix_from_json(const Json& j, int level);

Json to_json(const CharPoly& cp);
Json to_json(const MomentTable& t);
// n, averaged, then one column per component
void write_csv(std::ostream& out, const MomentTable& t);
Json to_json(const MomentEstimate& e);
Json to_json(std::span<const VerificationCheck> checks);
Json to_json(const ComponentOrderReport& report);

}  // namespace satotate
