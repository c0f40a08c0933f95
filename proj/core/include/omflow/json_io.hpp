#pragma once

#include <json.hpp>

#include "omflow/double_circuit.hpp"
#include "omflow/matroid.hpp"
#include "omflow/oriented.hpp"

namespace omflow {

// ordered_json keeps insertion order, so serialized output is byte-stable.
using Json = nlohmann::ordered_json;

Json graph_to_json(const MultiGraph& g);
MultiGraph graph_from_json(const Json& j);

// {"n", "kind", ...payload}; explicit-basis matroids serialize as
// {"n", "bases"} with no kind tag.  Deserialized matroids run self_check.
Json matroid_to_json(const Matroid& m);
Matroid matroid_from_json(const Json& j);

Json report_to_json(const DoubleCircuitReport& r);
Json certificate_to_json(const GspCertificate& c);
Json flow_to_json(const FlowVector& f);

// Decimal string when the value overflows int64.
Json json_int(const Int& x);
Json int_vector_to_json(const IntVector& v);

}  // namespace omflow
