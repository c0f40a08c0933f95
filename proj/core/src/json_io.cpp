#include "omflow/json_io.hpp"

#include "omflow/errors.hpp"

namespace omflow {

namespace {

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing JSON field \"") + key + "\"");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("JSON field \"") + key + "\" must be an integer");
  return v.get<int>();
}

Mask mask_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("JSON field \"") + key + "\" must be an integer mask");
  return v.get<Mask>();
}

}  // namespace

Json graph_to_json(const MultiGraph& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  Json edges = Json::array();
  for (int e = 0; e < g.edge_count(); ++e) edges.push_back({g.edge(e).u, g.edge(e).v});
  j["edges"] = std::move(edges);
  return j;
}

MultiGraph graph_from_json(const Json& j) {
  int nv = int_field(j, "vertices");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw InputError("JSON field \"edges\" must be an array");
  std::vector<std::pair<int, int>> es;
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError("each edge must be a [u, v] pair");
    es.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return MultiGraph(nv, std::move(es));
}

Json matroid_to_json(const Matroid& m) {
  const MatroidInfo& info = m.info();
  Json j;
  j["n"] = m.size();
  switch (info.kind) {
    case MatroidKind::uniform:
      j["kind"] = "uniform";
      j["rank"] = info.uniform_rank;
      break;
    case MatroidKind::graphic:
      j["kind"] = "graphic";
      j["graph"] = graph_to_json(*info.graph);
      break;
    case MatroidKind::bicircular:
      j["kind"] = "bicircular";
      j["graph"] = graph_to_json(*info.graph);
      break;
    case MatroidKind::lattice_path:
      j["kind"] = "lattice_path";
      j["upper"] = info.upper;
      j["lower"] = info.lower;
      break;
    case MatroidKind::dual:
      j["kind"] = "dual";
      j["of"] = matroid_to_json(*info.base);
      break;
    case MatroidKind::minor:
      j["kind"] = "minor";
      j["of"] = matroid_to_json(*info.base);
      j["deleted"] = info.deleted;
      j["contracted"] = info.contracted;
      break;
    case MatroidKind::explicit_bases:
      j["bases"] = info.bases;
      break;
  }
  return j;
}

namespace {

Matroid matroid_from_json_inner(const Json& j) {
  if (!j.is_object()) throw InputError("matroid JSON must be an object");
  int n = int_field(j, "n");
  if (j.contains("bases")) {
    const Json& bs = field(j, "bases");
    if (!bs.is_array()) throw InputError("JSON field \"bases\" must be an array of masks");
    std::vector<Mask> bases;
    for (const Json& b : bs) {
      if (!b.is_number_integer()) throw InputError("each basis must be an integer mask");
      bases.push_back(b.get<Mask>());
    }
    return make_explicit_bases(n, std::move(bases));
  }
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw InputError("JSON field \"kind\" must be a string");
  std::string k = kind.get<std::string>();
  if (k == "uniform") return make_uniform(int_field(j, "rank"), n);
  if (k == "graphic") return make_graphic(graph_from_json(field(j, "graph")));
  if (k == "bicircular") return make_bicircular(graph_from_json(field(j, "graph")));
  if (k == "lattice_path")
    return make_lattice_path(field(j, "upper").get<std::string>(), field(j, "lower").get<std::string>());
  if (k == "dual") return dual(matroid_from_json_inner(field(j, "of")));
  if (k == "minor")
    return minor(matroid_from_json_inner(field(j, "of")), mask_field(j, "deleted"),
                 mask_field(j, "contracted"));
  throw InputError("unknown matroid kind \"" + k + "\"");
}

}  // namespace

Matroid matroid_from_json(const Json& j) {
  Matroid m = matroid_from_json_inner(j);
  m.self_check();
  return m;
}

Json report_to_json(const DoubleCircuitReport& r) {
  Json j;
  j["D"] = r.d;
  j["classes"] = r.classes;
  j["degree"] = r.degree;
  j["singular"] = r.singular;
  j["multiple"] = r.multiple;
  j["positive"] = r.positive;
  return j;
}

Json json_int(const Int& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Json int_vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

Json certificate_to_json(const GspCertificate& c) {
  Json j;
  j["verdict"] = c.verdict;
  j["minors_checked"] = c.minors_checked;
  Json ws = Json::array();
  for (const MinorRecord& w : c.witnesses) {
    Json r;
    r["delete"] = w.del;
    r["contract"] = w.con;
    r["flow"] = int_vector_to_json(w.flow);
    ws.push_back(std::move(r));
  }
  j["witnesses"] = std::move(ws);
  if (c.failing_minor) {
    Json f;
    f["delete"] = c.failing_minor->first;
    f["contract"] = c.failing_minor->second;
    j["failing_minor"] = std::move(f);
  } else {
    j["failing_minor"] = nullptr;
  }
  return j;
}

Json flow_to_json(const FlowVector& f) {
  Json j;
  j["entries"] = int_vector_to_json(f.entries);
  j["coefficients"] = int_vector_to_json(f.certificate.coefficients);
  return j;
}

}  // namespace omflow
