#include "toplat/json_io.hpp"

#include <string>

#include "toplat/error.hpp"

namespace toplat {
namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

Json to_json(const FinTopology& t) {
  return Json{{"n", t.ground_size()}, {"opens", std::vector<Mask>(t.opens().begin(), t.opens().end())}};
}

FinTopology topology_from_json(const Json& j) {
  const int n = get<int>(j, "n");
  const auto opens = get<std::vector<std::int64_t>>(j, "opens");
  if (n < 1 || n > kMaxGround) fail(ErrorKind::InvalidArgument, "n must be in 1..9");
  std::vector<Mask> masks;
  for (auto o : opens) {
    if (o < 0 || o > static_cast<std::int64_t>(full_mask(n))) {
      fail(ErrorKind::MaskOutOfRange, "open " + std::to_string(o) + " does not fit in " + std::to_string(n) + " bits");
    }
    masks.push_back(static_cast<Mask>(o));
  }
  return validate_topology(n, masks);
}

Json to_json(const NbhdTopology& t) {
  if (t.ground_size() <= kMaxGround) return to_json(t.to_fin());
  return Json{{"n", t.ground_size()}, {"hulls", std::vector<WideMask>(t.hulls().begin(), t.hulls().end())}};
}

NbhdTopology nbhd_topology_from_json(const Json& j) {
  if (j.is_object() && j.contains("hulls")) {
    const auto hulls = get<std::vector<WideMask>>(j, "hulls");
    if (static_cast<int>(hulls.size()) != get<int>(j, "n")) fail(ErrorKind::ParseError, "hull count differs from n");
    return NbhdTopology(hulls);
  }
  return NbhdTopology::from(topology_from_json(j));
}

Json to_json(const Bijection& b) { return Json(std::vector<int>(b.image().begin(), b.image().end())); }

Json to_json(const ReconstructionResult& r) {
  return Json{{"theta", to_json(r.theta)}, {"uses_complement", r.uses_complement}};
}

Json lattice_table_to_json(std::span<const std::size_t> map) {
  return Json{{"size", map.size()}, {"map", std::vector<std::size_t>(map.begin(), map.end())}};
}

std::vector<std::size_t> lattice_table_from_json(const Json& j) {
  const auto size = get<std::size_t>(j, "size");
  auto map = get<std::vector<std::size_t>>(j, "map");
  if (map.size() != size) fail(ErrorKind::ParseError, "map has " + std::to_string(map.size()) + " entries, size says " + std::to_string(size));
  return map;
}

Json to_json(std::span<const int> v) { return Json(std::vector<int>(v.begin(), v.end())); }

Json to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& row : s.basis_vectors()) basis.push_back(to_json(row));
  return Json{{"dim", s.dim()}, {"basis", basis}};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; ++r) rows.push_back(to_json(m.row(r)));
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "matrix must be a non-empty list of rows");
  std::vector<std::vector<int>> rows;
  try {
    rows = j.get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("matrix: ") + e.what());
  }
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != m.cols) fail(ErrorKind::ParseError, "ragged matrix");
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

Json space_to_json(const VectorSpace& space) {
  return Json{{"p", space.field().characteristic()}, {"k", space.field().degree()}, {"dim", space.dim()}};
}

std::shared_ptr<const VectorSpace> space_from_json(const Json& j) {
  return std::make_shared<const VectorSpace>(FiniteField::make(get<int>(j, "p"), get<int>(j, "k")), get<int>(j, "dim"));
}

Json vector_topology_to_json(const VectorSpace& space, const NbhdTopology& t) {
  return Json{{"space", space_to_json(space)}, {"topology", to_json(t)}};
}

Json to_json(const SubspaceIsoTable& t) {
  return Json{{"kind", "subspace"},      {"source", space_to_json(*t.source)}, {"target", space_to_json(*t.target)},
              {"size", t.map.size()},    {"map", t.map},                       {"graded", true},
              {"offsets", t.offsets}};
}

SubspaceIsoTable subspace_table_from_json(const Json& j) {
  auto table = make_subspace_iso_table(space_from_json(get<Json>(j, "source")), space_from_json(get<Json>(j, "target")),
                                       lattice_table_from_json(j));
  if (j.contains("offsets") && get<std::vector<std::size_t>>(j, "offsets") != table.offsets) {
    fail(ErrorKind::ParseError, "offsets do not match the dimension blocks");
  }
  return table;
}

Json to_json(const TauIsoTable& t) {
  return Json{{"kind", "tau"},
              {"source", space_to_json(*t.source)},
              {"target", space_to_json(*t.target)},
              {"size", t.map.size()},
              {"map", t.map}};
}

TauIsoTable tau_table_from_json(const Json& j) {
  return make_tau_iso_table(space_from_json(get<Json>(j, "source")), space_from_json(get<Json>(j, "target")),
                            lattice_table_from_json(j));
}

Json to_json(const TripleDecomposition& t) {
  return Json{{"psi", t.psi.exponent},
              {"matrix", to_json(t.matrix)},
              {"y0", to_json(t.y0)},
              {"uses_complement", t.uses_complement}};
}

std::string to_string(CensusMode mode) {
  switch (mode) {
    case CensusMode::Census: return "census";
    case CensusMode::Image: return "image";
    case CensusMode::Translates: return "translates";
  }
  return "?";
}

Json to_json(const GaloisReport& r) {
  return Json{{"subspaces", r.subspaces},
              {"vector_topologies", r.vector_topologies},
              {"tau_source", to_string(r.tau_source)},
              {"tau_matches_image", r.tau_matches_image},
              {"s_after_t_is_identity", r.s_after_t_is_identity},
              {"t_below_t_after_s", r.t_below_t_after_s},
              {"t_after_s_is_identity", r.t_after_s_is_identity},
              {"zero_iff_discrete", r.zero_iff_discrete},
              {"adjunction", r.adjunction},
              {"antitone", r.antitone},
              {"complement_fixes_tau", r.complement_fixes_tau},
              {"discrete_is_max", r.discrete_is_max},
              {"sigma_meet_stays_in_tau", r.sigma_meet_stays_in_tau},
              {"sigma_join_stays_in_tau", r.sigma_join_stays_in_tau},
              {"meet_is_t_of_sum", r.meet_is_t_of_sum},
              {"join_is_t_of_intersection", r.join_is_t_of_intersection},
              {"pass", r.pass()}};
}

Json to_json(const TheoremBReport& r) {
  Json j{{"semidirect_order", r.semidirect_order}, {"group_order", r.group_order}, {"expected", r.expected_order}};
  if (r.census_run) {
    j["census"] = r.census;
    j["census_bijections"] = r.census_bijections;
    j["census_expected"] = r.semidirect_order;
    j["image_matches_census"] = r.image_matches_census;
  }
  j["identity"] = r.identity_ok;
  j["product_matches_composition"] = r.product_matches_composition;
  j["associative"] = r.associative;
  j["inverses"] = r.inverses;
  j["products_exhaustive"] = r.products_exhaustive;
  j["homomorphism"] = r.homomorphism;
  j["complement_commutes"] = r.complement_commutes;
  j["injective"] = r.injective;
  j["complement_fixes_tau"] = r.complement_fixes_tau;
  j["complement_distinct_on_sigma"] = r.complement_distinct_on_sigma;
  j["pass"] = r.pass();
  return j;
}

Json to_json(const TheoremAReport& r) {
  Json failures = Json::array();
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    if (r.runs[i].exact) continue;
    failures.push_back(Json{{"trial", i},
                            {"planted", to_json(r.runs[i].planted)},
                            {"recovered", to_json(r.runs[i].recovered)},
                            {"tau_preserved", r.runs[i].tau_preserved}});
  }
  int with_complement = 0;
  for (const auto& run : r.runs) with_complement += run.planted.uses_complement ? 1 : 0;
  return Json{{"seed", r.seed},
              {"trials", r.trials},
              {"recovered", r.recovered},
              {"planted_with_complement", with_complement},
              {"failures", failures},
              {"pass", r.pass()}};
}

Json to_json(const FtpgResult& r) {
  return Json{{"psi", r.psi.exponent}, {"matrix", to_json(r.map.matrix)}};
}

Json to_json(const TheoremCReport& r) {
  Json grades = Json::array();
  for (const auto& g : r.grades) grades.push_back(Json{{"dim", g.dim}, {"subspaces", g.subspaces}, {"preserved", g.preserved}});
  Json j{{"source_dim", r.source_dim},
         {"target_dim", r.target_dim},
         {"dims_equal", r.source_dim == r.target_dim},
         {"source_field_order", r.source_field_order},
         {"target_field_order", r.target_field_order}};
  if (r.hausdorff_checked) j["hausdorff_preserved"] = r.hausdorff_preserved;
  j["g_after_f_below_identity"] = r.g_after_f_below_identity;
  j["f_after_g_below_identity"] = r.f_after_g_below_identity;
  j["grades"] = grades;
  j["compatible"] = r.compatible;
  j["reconstruction"] = to_json(r.reconstruction);
  j["reconstruction_reproduces"] = r.reconstruction_reproduces;
  j["pass"] = r.pass();
  return j;
}

Json to_json(const TypeCensus& c) {
  Json cells = Json::array();
  const AtomClass classes[] = {AtomClass::N, AtomClass::M, AtomClass::L};
  for (auto p : classes) {
    for (auto q : classes) {
      const auto& realized = c.realized[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      if (realized.empty()) continue;
      cells.push_back(Json{{"p", to_string(p)}, {"q", to_string(q)}, {"realized", realized}, {"allowed", allowed_types(p, q)}});
    }
  }
  Json j{{"n", c.n},
         {"cells", cells},
         {"within_allowed", c.within_allowed},
         {"symmetric", c.symmetric},
         {"l_atoms_have_type4_partner", c.l_atoms_have_type4_partner}};
  if (c.n <= 5) j["closed_form_matches_generic"] = c.closed_form_matches_generic;
  if (c.n <= 4) j["closed_form_matches_lattice"] = c.closed_form_matches_lattice;
  return j;
}

}  // namespace toplat
