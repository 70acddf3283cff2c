#include "satotate/serialize.hpp"

#include <ostream>

#include "satotate/errors.hpp"

namespace satotate {

namespace {

Json element_json(const CyclotomicElement& x) {
  Json out = Json::array();
  for (const auto& c : x.coefficients()) out.push_back(to_string(c));
  return out;
}

CyclotomicElement element_from_json(const Json& j, int level) {
  if (!j.is_array()) throw DomainError("cyclotomic entry must be a list of rationals");
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(parse_rational(v.get<std::string>()));
  return CyclotomicElement(level, std::move(c));
}

}  // namespace

Json to_json(const BlockUnitaryMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.g(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.g(); ++j) {
      const Block b = m.block(i, j);
      const std::string code = block_code(b);
      if (!code.empty()) {
        row.push_back(code);
        continue;
      }
      Json general;
      general["level"] = m.level();
      general["entries"] = Json::array();
      for (const auto& x : b.e) general["entries"].push_back(element_json(x));
      row.push_back(std::move(general));
    }
    rows.push_back(std::move(row));
  }
  Json out;
  out["g"] = m.g();
  out["blocks"] = std::move(rows);
  return out;
}

BlockUnitaryMatrix block_matrix_from_json(const Json& j, int level) {
  try {
    const int g = j.at("g").get<int>();
    const Json& rows = j.at("blocks");
    if (!rows.is_array() || static_cast<int>(rows.size()) != g) {
      throw DomainError("block matrix JSON needs g rows");
    }
    BlockUnitaryMatrix m(g, level);
    for (int r = 0; r < g; ++r) {
      if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != g) {
        throw DomainError("block matrix JSON needs g columns per row");
      }
      for (int c = 0; c < g; ++c) {
        const Json& cell = rows[r][c];
        if (cell.is_string()) {
          auto b = block_from_code(cell.get<std::string>(), level);
          if (!b) throw DomainError("unknown block code " + cell.get<std::string>());
          if (!b->is_zero()) m.set_block(r, c, *b);
          continue;
        }
        const Json& e = cell.at("entries");
        if (!e.is_array() || e.size() != 4) throw DomainError("general block needs four entries");
        Block b(element_from_json(e[0], level), element_from_json(e[1], level),
                element_from_json(e[2], level), element_from_json(e[3], level));
        if (!b.is_zero()) m.set_block(r, c, b);
      }
    }
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(std::string("malformed block matrix JSON: ") + ex.what());
  }
}

Json to_json(const CharPoly& cp) {
  Json coeffs = Json::array();
  for (int t = cp.degree(); t >= 0; --t) {
    if (cp.coefficient(t).is_zero()) continue;
    Json c;
    c["power"] = t;
    c["value"] = cp.coefficient(t).to_string();
    coeffs.push_back(std::move(c));
  }
  Json out;
  out["degree"] = cp.degree();
  out["variables"] = cp.nvars();
  out["polynomial"] = cp.to_string();
  out["coefficients"] = std::move(coeffs);
  return out;
}

Json to_json(const MomentTable& t) {
  Json moments = Json::array();
  for (int n = 0; n <= t.n_max; ++n) {
    Json row;
    row["n"] = n;
    row["exact"] = to_string(t.averaged[n]);
    Json comps = Json::object();
    for (std::size_t c = 0; c < t.components.size(); ++c) {
      comps[t.components[c].label()] = to_string(t.per_component[c][n]);
    }
    row["components"] = std::move(comps);
    moments.push_back(std::move(row));
  }
  Json out;
  out["m"] = t.m;
  out["base_field"] = to_string(t.base_field);
  out["i"] = t.i;
  out["generator"] = t.generator;
  out["moments"] = std::move(moments);
  return out;
}

void write_csv(std::ostream& out, const MomentTable& t) {
  out << "n,averaged";
  for (const auto& c : t.components) out << ",k" << c.k << "j" << c.j;
  out << "\n";
  for (int n = 0; n <= t.n_max; ++n) {
    out << n << "," << to_string(t.averaged[n]);
    for (const auto& seq : t.per_component) out << "," << to_string(seq[n]);
    out << "\n";
  }
}

Json to_json(const MomentEstimate& e) {
  Json out;
  out["n"] = e.n;
  out["N"] = e.samples;
  out["value"] = e.value;
  out["standard_error"] = e.standard_error;
  if (e.exact) out["exact"] = to_string(*e.exact);
  return out;
}

Json to_json(std::span<const VerificationCheck> checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["required"] = c.required;
    if (!c.detail.empty()) j["detail"] = c.detail;
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const ComponentOrderReport& report) {
  Json facts = Json::array();
  for (const auto& f : report.facts) {
    Json j;
    j["name"] = f.name;
    j["holds"] = f.holds;
    if (!f.detail.empty()) j["detail"] = f.detail;
    facts.push_back(std::move(j));
  }
  Json out;
  out["component_count"] = report.component_count;
  out["facts"] = std::move(facts);
  return out;
}

}  // namespace satotate
