#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torfan/arrangement.hpp"
#include "torfan/betti.hpp"
#include "torfan/fan.hpp"
#include "torfan/strata.hpp"
#include "torfan/subdiv.hpp"

namespace torfan {

using nlohmann::json;

namespace detail {

inline std::int64_t json_int(const Int& x) {
  static const Int lim = Int(1) << 53;
  if (x > lim || x < -lim) throw Error("integer too large for JSON output: " + x.str());
  return static_cast<std::int64_t>(x);
}

inline json vec_to_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(json_int(x));
  return a;
}

inline IntVec vec_from_json(const json& a) {
  if (!a.is_array()) throw ParseError("expected an array of integers");
  IntVec v;
  for (const auto& x : a) {
    if (!x.is_number_integer()) throw ParseError("expected an integer entry");
    v.push_back(Int(x.get<std::int64_t>()));
  }
  return v;
}

}  // namespace detail

/// Canonical fan encoding: rays sorted, cone index lists sorted, cone list
/// sorted. Equal fans serialize to identical bytes.
inline json fan_to_json(const Fan& f) {
  std::vector<std::size_t> order(f.rays().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vec_less(f.rays()[a], f.rays()[b]); });
  std::vector<int> remap(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = static_cast<int>(pos);

  json rays = json::array();
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    rays.push_back(detail::vec_to_json(f.rays()[order[pos]]));

  std::vector<std::vector<int>> cones;
  for (const auto& m : f.maximal_cones()) {
    std::vector<int> ids;
    for (int id : m.rays) ids.push_back(remap[id]);
    std::sort(ids.begin(), ids.end());
    cones.push_back(std::move(ids));
  }
  std::sort(cones.begin(), cones.end());
  json jc = json::array();
  for (const auto& c : cones) jc.push_back(c);

  return json{{"rank", f.rank()}, {"rays", rays}, {"maximal_cones", jc}};
}

inline Fan fan_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("rays") ||
      !j.contains("maximal_cones"))
    throw ParseError("fan JSON needs rank, rays, maximal_cones");
  if (!j["rank"].is_number_integer() || j["rank"].get<std::int64_t>() < 0)
    throw ParseError("fan rank must be a nonnegative integer");
  std::size_t rank = j["rank"].get<std::size_t>();
  std::vector<IntVec> rays;
  for (const auto& r : j["rays"]) rays.push_back(detail::vec_from_json(r));
  std::vector<std::vector<int>> cones;
  for (const auto& c : j["maximal_cones"]) {
    if (!c.is_array()) throw ParseError("maximal cone must be an index list");
    std::vector<int> ids;
    for (const auto& x : c) {
      if (!x.is_number_integer()) throw ParseError("ray index must be an integer");
      ids.push_back(x.get<int>());
    }
    cones.push_back(std::move(ids));
  }
  return Fan::from_data(rank, rays, cones);
}

inline json value_to_json(const TorusValue& v) {
  json g = json::array();
  for (const auto& e : v.generic) g.push_back(format_rational(e));
  return json{{"torsion", format_rational(v.torsion)}, {"generic", g}};
}

inline TorusValue value_from_json(const json& j, std::size_t params) {
  if (!j.is_object() || !j.contains("torsion")) throw ParseError("value needs a torsion field");
  TorusValue v;
  v.torsion = mod1(parse_rational(j["torsion"].get<std::string>()));
  if (j.contains("generic"))
    for (const auto& e : j["generic"]) v.generic.push_back(parse_rational(e.get<std::string>()));
  if (v.generic.size() != params) throw ParseError("value has the wrong parameter count");
  return v;
}

inline json arrangement_to_json(const Arrangement& a) {
  json layers = json::array();
  for (const auto& l : a.layers) {
    json gamma = json::array();
    for (std::size_t i = 0; i < l.gamma.basis.rows(); ++i)
      gamma.push_back(detail::vec_to_json(l.gamma.basis.row(i)));
    json values = json::array();
    for (const auto& v : l.values) values.push_back(value_to_json(v));
    layers.push_back(json{{"gamma", gamma}, {"values", values}});
  }
  return json{{"rank", a.rank}, {"parameters", a.params}, {"layers", layers}};
}

/// Reads an arrangement; layers with a non-saturated lattice are split into
/// their connected components on ingestion.
inline Arrangement arrangement_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rank")) throw ParseError("arrangement JSON needs a rank");
  std::size_t rank = j["rank"].get<std::size_t>();
  std::size_t params = j.contains("parameters") ? j["parameters"].get<std::size_t>() : 0;
  Arrangement a(rank, params);
  if (!j.contains("layers")) return a;
  for (const auto& jl : j["layers"]) {
    std::vector<IntVec> rows;
    for (const auto& r : jl["gamma"]) rows.push_back(detail::vec_from_json(r));
    std::vector<TorusValue> values;
    if (jl.contains("values"))
      for (const auto& v : jl["values"]) values.push_back(value_from_json(v, params));
    if (values.size() != rows.size())
      throw ParseError("layer needs one value per basis character");
    for (const auto& r : rows) {
      if (r.size() != rank) throw ParseError("character length differs from rank");
      if (vec_is_zero(r)) throw ZeroCharacterError("zero character in layer");
    }
    IntMat basis = rows.empty() ? IntMat(0, rank) : IntMat::from_rows(rows);
    if (rank_of(basis) != basis.rows())
      throw ParseError("layer characters are linearly dependent");
    Sublattice gamma(rank, basis);
    if (is_split_summand(gamma)) {
      a.add_layer(Layer(rank, params, std::move(gamma), std::move(values)));
    } else {
      for (const auto& comp : normalize_layer(rank, params, basis, values)) a.add_layer(comp);
    }
  }
  return a;
}

inline json trace_to_json(const SubdivisionTrace& t) {
  json out = json::array();
  for (const auto& s : t)
    out.push_back(json{{"character", detail::vec_to_json(s.character)},
                       {"cone", json::array({detail::vec_to_json(s.cone[0]),
                                             detail::vec_to_json(s.cone[1])})},
                       {"new_ray", detail::vec_to_json(s.new_ray)}});
  return out;
}

inline SubdivisionTrace trace_from_json(const json& j) {
  SubdivisionTrace t;
  for (const auto& s : j) {
    TraceStep step;
    step.character = detail::vec_from_json(s["character"]);
    step.cone[0] = detail::vec_from_json(s["cone"][0]);
    step.cone[1] = detail::vec_from_json(s["cone"][1]);
    step.new_ray = detail::vec_from_json(s["new_ray"]);
    t.push_back(std::move(step));
  }
  return t;
}

inline json betti_to_json(const PoincarePolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coeffs) out.push_back(detail::json_int(c));
  return out;
}

namespace detail {

inline std::vector<std::pair<int, int>> hasse_covers(const std::vector<std::vector<char>>& leq) {
  std::vector<std::pair<int, int>> covers;
  const std::size_t n = leq.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j] || leq[j][i]) continue;
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k) {
        if (k == i || k == j) continue;
        if (leq[i][k] && leq[k][j] && !leq[k][i] && !leq[j][k]) direct = false;
      }
      if (direct) covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return covers;
}

}  // namespace detail

inline json poset_to_json(const StrataPoset& p) {
  json layers = json::array();
  for (const auto& l : p.layers) {
    json gamma = json::array();
    for (std::size_t i = 0; i < l.gamma.basis.rows(); ++i)
      gamma.push_back(detail::vec_to_json(l.gamma.basis.row(i)));
    json values = json::array();
    for (const auto& v : l.values) values.push_back(value_to_json(v));
    layers.push_back(json{{"gamma", gamma}, {"values", values}});
  }
  json strata = json::array();
  for (const auto& s : p.strata)
    strata.push_back(json{{"layer", s.layer}, {"cone", s.cone}, {"dim", s.dim}});
  json covers = json::array();
  for (const auto& [i, j] : detail::hasse_covers(p.leq)) covers.push_back(json::array({i, j}));
  return json{{"fan", fan_to_json(p.fan)},
              {"layers", layers},
              {"strata", strata},
              {"covers", covers}};
}

inline std::string stratum_label(const StrataPoset& p, std::size_t i) {
  const Stratum& s = p.strata[i];
  std::ostringstream os;
  os << "S" << i << " L" << s.layer << " c{";
  for (std::size_t k = 0; k < s.cone.size(); ++k) {
    if (k) os << ",";
    os << s.cone[k];
  }
  os << "} dim " << s.dim;
  return os.str();
}

inline std::string poset_to_dot(const StrataPoset& p) {
  std::ostringstream os;
  os << "digraph strata {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    os << "  n" << i << " [label=\"" << stratum_label(p, i) << "\"];\n";
  for (const auto& [i, j] : detail::hasse_covers(p.leq))
    os << "  n" << i << " -> n" << j << ";\n";
  os << "}\n";
  return os.str();
}

inline json building_to_json(const StrataPoset& p, const std::vector<int>& building) {
  json out = poset_to_json(p);
  out["building_set"] = building;
  return out;
}

inline json nested_to_json(const StrataPoset& p, const std::vector<int>& building,
                           const std::vector<std::vector<int>>& families) {
  json out = building_to_json(p, building);
  json fam = json::array();
  for (const auto& t : families) fam.push_back(t);
  out["nested_sets"] = fam;
  return out;
}

inline json schedule_to_json(const StrataPoset& p, const std::vector<int>& order) {
  json out = poset_to_json(p);
  out["schedule"] = order;
  return out;
}

/// The nested-set family ordered by inclusion, as a Hasse diagram.
inline std::string nested_complex_to_dot(const std::vector<std::vector<int>>& families) {
  auto label = [&](const std::vector<int>& t) {
    std::ostringstream os;
    os << "{";
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) os << ",";
      os << "S" << t[k];
    }
    os << "}";
    return os.str();
  };
  std::ostringstream os;
  os << "digraph nested {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < families.size(); ++i)
    os << "  n" << i << " [label=\"" << label(families[i]) << "\"];\n";
  for (std::size_t i = 0; i < families.size(); ++i)
    for (std::size_t j = 0; j < families.size(); ++j) {
      if (families[j].size() != families[i].size() + 1) continue;
      if (std::includes(families[j].begin(), families[j].end(), families[i].begin(),
                        families[i].end()))
        os << "  n" << i << " -> n" << j << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace torfan
