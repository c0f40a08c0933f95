#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "omflow/errors.hpp"
#include "omflow/json_io.hpp"
#include "support/catalog.hpp"
#include "support/oracles.hpp"

using namespace omflow;
using namespace omflow::test;

namespace {

std::vector<std::string> keys_of(const Json& j) {
  std::vector<std::string> ks;
  for (auto it = j.begin(); it != j.end(); ++it) ks.push_back(it.key());
  return ks;
}

}  // namespace

TEST_CASE("graphs round-trip through JSON") {
  for (const CatalogGraph& cg : catalog_graphs()) {
    Json j = graph_to_json(cg.graph);
    MultiGraph back = graph_from_json(Json::parse(j.dump()));
    REQUIRE(back.vertex_count() == cg.graph.vertex_count());
    REQUIRE(back.edge_count() == cg.graph.edge_count());
    for (int e = 0; e < back.edge_count(); ++e) {
      CHECK(back.edge(e).u == cg.graph.edge(e).u);
      CHECK(back.edge(e).v == cg.graph.edge(e).v);
    }
  }
}

TEST_CASE("bad graph JSON is rejected") {
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"edges": []})")), InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": 2, "edges": 5})")), InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": 2, "edges": [[0]]})")), InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": 2, "edges": [[0, "x"]]})")),
                  InputError);
  // Structurally valid JSON with an out-of-range endpoint fails in the
  // graph constructor instead.
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": 2, "edges": [[0, 7]]})")),
                  InputError);
}

TEST_CASE("every catalog matroid round-trips with its kind") {
  for (const CatalogMatroid& cm : catalog_matroids()) {
    Json j = matroid_to_json(cm.matroid);
    Matroid back = matroid_from_json(Json::parse(j.dump()));
    CHECK(back.size() == cm.matroid.size());
    CHECK(back.info().kind == cm.matroid.info().kind);
    if (cm.matroid.size() <= 12) CHECK(same_rank_function(back, cm.matroid));
    CHECK(matroid_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("explicit basis matroids serialize without a kind tag") {
  Matroid w = whirl3();
  Json j = matroid_to_json(w);
  CHECK(!j.contains("kind"));
  REQUIRE(j.contains("bases"));
  CHECK(j["bases"].size() == 17);
  Matroid back = matroid_from_json(j);
  CHECK(same_rank_function(back, w));
}

TEST_CASE("nested dual and minor kinds rebuild through their base") {
  Matroid m = minor(dual(make_bicircular(named_graph("prism"))), bit(1), bit(4));
  Json j = matroid_to_json(m);
  CHECK(j["kind"] == "minor");
  CHECK(j["of"]["kind"] == "dual");
  CHECK(j["of"]["of"]["kind"] == "bicircular");
  Matroid back = matroid_from_json(j);
  CHECK(same_rank_function(back, m));
  CHECK(back.minor_elements() == m.minor_elements());
}

TEST_CASE("deserialized matroids are self-checked") {
  // {3, 12} as 4-element bases violate basis exchange.
  Json bad;
  bad["n"] = 4;
  bad["bases"] = {3, 12};
  CHECK_THROWS_AS(matroid_from_json(bad), InvariantError);

  Json ok;
  ok["n"] = 4;
  ok["bases"] = {3, 5, 6, 9, 10, 12};
  CHECK(matroid_from_json(ok).full_rank() == 2);
}

TEST_CASE("bad matroid JSON is rejected") {
  CHECK_THROWS_AS(matroid_from_json(Json::parse("[1, 2]")), InputError);
  CHECK_THROWS_AS(matroid_from_json(Json::parse(R"({"kind": "uniform", "rank": 1})")), InputError);
  CHECK_THROWS_AS(matroid_from_json(Json::parse(R"({"n": 4, "kind": "mystery"})")), InputError);
  CHECK_THROWS_AS(matroid_from_json(Json::parse(R"({"n": 4, "kind": 7})")), InputError);
  CHECK_THROWS_AS(matroid_from_json(Json::parse(R"({"n": 4, "bases": "none"})")), InputError);
  CHECK_THROWS_AS(matroid_from_json(Json::parse(R"({"n": 4, "kind": "uniform", "rank": 9})")),
                  InputError);
  CHECK_THROWS_AS(
      matroid_from_json(Json::parse(R"({"n": 3, "kind": "minor", "of": {"n": 3, "kind": "uniform", "rank": 2}, "deleted": 1})")),
      InputError);
}

TEST_CASE("double circuit reports serialize in a fixed field order") {
  Matroid m = make_bicircular(named_graph("k4"));
  DoubleCircuitReport rep = double_circuit_report(m, m.full_mask());
  Json j = report_to_json(rep);
  CHECK(keys_of(j) ==
        std::vector<std::string>{"D", "classes", "degree", "singular", "multiple", "positive"});
  CHECK(j["D"] == 63);
  CHECK(j["degree"] == 6);
  CHECK(j["singular"] == 6);
  CHECK(j["multiple"] == 0);
  CHECK(j["positive"] == true);
  CHECK(j["classes"].size() == 6);
  CHECK(j.dump() == report_to_json(rep).dump());
}

TEST_CASE("certificates serialize with witnesses and failing minors") {
  OrientedMatroid good = realize_bicircular(named_graph("k4"), 2);
  GspCertificate c = certify_coGSP(good);
  Json j = certificate_to_json(c);
  CHECK(keys_of(j) ==
        std::vector<std::string>{"verdict", "minors_checked", "witnesses", "failing_minor"});
  CHECK(j["verdict"] == true);
  CHECK(j["minors_checked"] == 63);
  CHECK(j["failing_minor"].is_null());
  REQUIRE(!j["witnesses"].empty());
  for (const Json& w : j["witnesses"]) {
    CHECK(keys_of(w) == std::vector<std::string>{"delete", "contract", "flow"});
    CHECK(w["flow"].is_array());
  }

  GspCertificate bad = certify_coGSP(realize_graphic(named_graph("k4")));
  Json jb = certificate_to_json(bad);
  CHECK(jb["verdict"] == false);
  CHECK(jb["failing_minor"]["delete"] == 0);
  CHECK(jb["failing_minor"]["contract"] == 0);
}

TEST_CASE("flows serialize entries and certificate coefficients") {
  OrientedMatroid tri = realize_graphic(parse_edge_list("0 1\n1 2\n2 0"));
  auto f = nz3_coflow(tri);
  REQUIRE(f.has_value());
  Json j = flow_to_json(*f);
  CHECK(keys_of(j) == std::vector<std::string>{"entries", "coefficients"});
  CHECK(j["entries"].size() == 3);
  CHECK(j["coefficients"].size() == f->certificate.coefficients.size());
}

TEST_CASE("big integers fall back to decimal strings") {
  CHECK(json_int(Int(42)) == 42);
  CHECK(json_int(Int(-7)) == -7);
  Int big = Int(1) << 80;
  Json j = json_int(big);
  REQUIRE(j.is_string());
  CHECK(j.get<std::string>() == big.get_str());
  Int negbig = -big;
  Json v = int_vector_to_json({Int(1), negbig});
  CHECK(v[0] == 1);
  CHECK(v[1].get<std::string>() == negbig.get_str());
}

TEST_CASE("serialization is byte-stable") {
  Matroid m = make_lattice_path("NNEE", "EENN");
  std::string once = matroid_to_json(m).dump();
  std::string twice = matroid_to_json(make_lattice_path("NNEE", "EENN")).dump();
  CHECK(once == twice);
  CHECK(once.find("\"kind\":\"lattice_path\"") != std::string::npos);
}
