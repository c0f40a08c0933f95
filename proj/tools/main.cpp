#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omflow/bicircular.hpp"
#include "omflow/double_circuit.hpp"
#include "omflow/errors.hpp"
#include "omflow/json_io.hpp"
#include "omflow/multigraph.hpp"
#include "omflow/oriented.hpp"
#include "omflow/rng.hpp"

using namespace omflow;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    auto d = std::chrono::steady_clock::now() - start;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MultiGraph graph_from_text(const std::string& text, const std::string& format) {
  if (format == "edge-list") return parse_edge_list(text);
  if (format == "graph6") {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return parse_graph6(line);
    }
    throw ParseError("no graph6 record found");
  }
  if (format == "json") {
    try {
      return graph_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("bad JSON: ") + e.what());
    }
  }
  throw InputError("unknown format '" + format + "'");
}

// Emits the envelope as JSON or as a flat deterministic text view.
void emit(const Json& envelope, bool json) {
  if (json) {
    std::cout << envelope.dump() << "\n";
    return;
  }
  for (const auto& [key, value] : envelope.at("result").items()) {
    if (value.is_null()) continue;
    if (value.is_string())
      std::cout << key << ": " << value.get<std::string>() << "\n";
    else
      std::cout << key << ": " << value.dump() << "\n";
  }
}

Json envelope(const std::string& command, Json config, Json result, long long ms, bool timing) {
  Json j;
  j["tool"] = "omflow";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  j["result"] = std::move(result);
  j["timing_ms"] = timing ? ms : 0;
  return j;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string named, file;
  std::string format = "edge-list";
  bool slow = false;
  bool json = false;
  bool timing = false;
};

int run_verify(const VerifyOptions& opt) {
  Timer timer;
  MultiGraph g = opt.named.empty() ? graph_from_text(read_input(opt.file), opt.format)
                                   : named_graph(opt.named);
  int edge_cap = opt.slow ? 30 : 16;
  if (g.edge_count() > edge_cap)
    throw ResourceError("graph has " + std::to_string(g.edge_count()) +
                        " edges; cap is " + std::to_string(edge_cap) +
                        (opt.slow ? "" : " (rerun with --slow)"));

  Json config;
  config["graph"] = opt.named.empty() ? opt.file : opt.named;
  config["format"] = opt.named.empty() ? opt.format : "named";
  config["slow"] = opt.slow;

  Json result;
  result["graph"] = config["graph"];
  result["vertices"] = g.vertex_count();
  result["edges"] = g.edge_count();
  std::optional<int> gi = girth(g);
  result["girth"] = gi ? Json(*gi) : Json(nullptr);

  // Forests have no cycle at all, so the girth bound holds vacuously.
  if (gi && *gi < 5) {
    result["note"] = "girth " + std::to_string(*gi) + " < 5: theorem not applicable";
    result["verdict"] = "skipped";
    emit(envelope("verify-girth5", config, result, timer.ms(), opt.timing), opt.json);
    return 0;
  }

  Matroid b = make_bicircular(g);
  long long count = 0;
  int degree_max = 0;
  std::optional<DoubleCircuitReport> bad;
  for_each_double_circuit(b, [&](const DoubleCircuitReport& rep) {
    ++count;
    degree_max = std::max(degree_max, rep.degree);
    if (rep.positive && !bad) bad = rep;
  });
  result["dc_count"] = count;
  result["dc_degree_max"] = degree_max;
  result["positive_count"] = 0;
  if (bad) {
    long long positives = 0;
    for_each_double_circuit(b, [&](const DoubleCircuitReport& rep) {
      if (rep.positive) ++positives;
    });
    result["positive_count"] = positives;
    result["witness"] = report_to_json(*bad);
    result["verdict"] = "violated";
  } else {
    result["witness"] = nullptr;
    result["verdict"] = "verified";
  }
  emit(envelope("verify-girth5", config, result, timer.ms(), opt.timing), opt.json);
  return bad ? 1 : 0;
}

// ---------------------------------------------------------------- certify

struct CertifyOptions {
  std::string named, file;
  std::string format = "edge-list";
  std::string lattice_path;
  bool graphic = false;
  bool bicircular = false;
  std::string mode;
  std::uint64_t seed = 1;
  int max_elements = -1;
  int max_removals = -2;  // -1 is a meaningful cap value here
  long long max_minors = -2;
  int reorient_count = 0;
  bool json = false;
  bool timing = false;
};

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InputError(std::string("environment variable ") + name + " is not an integer");
  }
}

GspCaps resolve_caps(const CertifyOptions& opt) {
  GspCaps caps;
  caps.max_elements = env_int("OMFLOW_MAX_ELEMENTS", caps.max_elements);
  caps.max_removals = env_int("OMFLOW_MAX_REMOVALS", caps.max_removals);
  caps.max_minors = env_int("OMFLOW_MAX_MINORS", static_cast<int>(caps.max_minors));
  if (opt.max_elements != -1) caps.max_elements = opt.max_elements;
  if (opt.max_removals != -2) caps.max_removals = opt.max_removals;
  if (opt.max_minors != -2) caps.max_minors = opt.max_minors;
  return caps;
}

int run_certify(const CertifyOptions& opt) {
  Timer timer;
  if (opt.mode != "gsp" && opt.mode != "cogsp")
    throw InputError("--mode must be gsp or cogsp");
  if (opt.graphic && opt.bicircular)
    throw InputError("--graphic and --bicircular are mutually exclusive");

  GspCaps caps = resolve_caps(opt);
  Json config;
  OrientedMatroid o;
  if (!opt.lattice_path.empty()) {
    size_t comma = opt.lattice_path.find(',');
    if (comma == std::string::npos)
      throw ParseError("--lattice-path wants UPPER,LOWER, e.g. NNEE,EENN");
    std::string upper = opt.lattice_path.substr(0, comma);
    std::string lower = opt.lattice_path.substr(comma + 1);
    o = realize_lattice_path(upper, lower, opt.seed);
    config["matroid"] = "lattice_path";
    config["upper"] = upper;
    config["lower"] = lower;
  } else {
    MultiGraph g = opt.named.empty() ? graph_from_text(read_input(opt.file), opt.format)
                                     : named_graph(opt.named);
    config["graph"] = opt.named.empty() ? opt.file : opt.named;
    if (opt.graphic) {
      o = realize_graphic(g);
      config["matroid"] = "graphic";
    } else {
      o = realize_bicircular(g, opt.seed);
      config["matroid"] = "bicircular";
    }
  }
  config["mode"] = opt.mode;
  config["seed"] = opt.seed;
  config["caps"] = {{"max_elements", caps.max_elements},
                    {"max_removals", caps.max_removals},
                    {"max_minors", caps.max_minors}};
  config["reorient"] = opt.reorient_count;

  GspCertificate cert =
      opt.mode == "gsp" ? certify_GSP(o, caps) : certify_coGSP(o, caps);

  Json result;
  result["elements"] = o.size();
  result["rank"] = o.underlying.full_rank();
  result["mode"] = opt.mode;
  result["verdict"] = cert.verdict;
  result["minors_checked"] = cert.minors_checked;
  result["certificate"] = certificate_to_json(cert);

  if (opt.reorient_count > 0) {
    Rng rng(opt.seed);
    bool agree = true;
    for (int i = 0; i < opt.reorient_count; ++i) {
      Mask s = Mask(rng.below(Mask(1) << o.size()));
      OrientedMatroid r = reorient(o, s);
      GspCertificate c = opt.mode == "gsp" ? certify_GSP(r, caps) : certify_coGSP(r, caps);
      if (c.verdict != cert.verdict) agree = false;
    }
    result["reorient_sweep"] = {{"count", opt.reorient_count}, {"all_agree", agree}};
  } else {
    result["reorient_sweep"] = nullptr;
  }
  emit(envelope("certify", config, result, timer.ms(), opt.timing), opt.json);
  return cert.verdict ? 0 : 1;
}

// ---------------------------------------------------------------- census

struct CensusOptions {
  std::string input;
  std::string format = "graph6";
  bool json = false;
  bool timing = false;
  bool slow = false;
  std::string checkpoint;
  bool resume = false;
  int every = 16;
};

std::vector<std::string> census_records(const std::string& text, const std::string& format) {
  std::vector<std::string> records;
  if (format == "graph6") {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) records.push_back(line);
    }
    return records;
  }
  if (format == "edge-list") {
    // Blank lines separate records.
    std::istringstream in(text);
    std::string line, block;
    auto flush = [&] {
      if (block.find_first_not_of(" \t\r\n") != std::string::npos) records.push_back(block);
      block.clear();
    };
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty())
        flush();
      else
        block += line + "\n";
    }
    flush();
    return records;
  }
  throw InputError("census format must be graph6 or edge-list");
}

void write_checkpoint(const std::string& path, long long processed) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::trunc);
  Json j;
  j["processed"] = processed;
  out << j.dump() << "\n";
}

long long read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  try {
    Json j = Json::parse(in);
    return j.at("processed").get<long long>();
  } catch (const std::exception&) {
    throw InputError("unreadable checkpoint file '" + path + "'");
  }
}

int run_census(const CensusOptions& opt) {
  Timer total;
  std::string text = read_input(opt.input.empty() ? "-" : opt.input);
  std::vector<std::string> records = census_records(text, opt.format);
  long long start = opt.resume && !opt.checkpoint.empty() ? read_checkpoint(opt.checkpoint) : 0;
  int edge_cap = opt.slow ? 30 : 18;

  bool violation = false;
  Json rows = Json::array();
  if (!opt.json && start == 0)
    std::cout << "name,n,m,girth,dc_count,dc_degree_max,positive_count,symdiff2_found,runtime_ms\n";

  for (long long i = start; i < static_cast<long long>(records.size()); ++i) {
    Timer per;
    MultiGraph g;
    try {
      g = graph_from_text(records[i], opt.format == "graph6" ? "graph6" : "edge-list");
      if (g.edge_count() > edge_cap)
        throw ResourceError("too large: " + std::to_string(g.edge_count()) + " edges");
    } catch (const std::exception& e) {
      std::cerr << "census: record " << i << ": " << e.what() << "\n";
      write_checkpoint(opt.checkpoint, i + 1);
      continue;
    }

    Matroid b = make_bicircular(g);
    long long dc_count = 0, positive = 0;
    int degree_max = 0;
    for_each_double_circuit(b, [&](const DoubleCircuitReport& rep) {
      ++dc_count;
      degree_max = std::max(degree_max, rep.degree);
      if (rep.positive) ++positive;
    });
    bool sym = false;
    try {
      sym = symdiff2_circuit_pair(g).pair.has_value();
    } catch (const InputError&) {
      sym = false;
    }
    if (degree_max > 6) violation = true;
    long long ms = opt.timing ? per.ms() : 0;

    if (opt.json) {
      Json row;
      row["name"] = i;
      row["n"] = g.vertex_count();
      row["m"] = g.edge_count();
      std::optional<int> gi = girth(g);
      row["girth"] = gi ? Json(*gi) : Json(nullptr);
      row["dc_count"] = dc_count;
      row["dc_degree_max"] = degree_max;
      row["positive_count"] = positive;
      row["symdiff2_found"] = sym;
      row["runtime_ms"] = ms;
      rows.push_back(std::move(row));
    } else {
      std::optional<int> gi = girth(g);
      std::cout << i << "," << g.vertex_count() << "," << g.edge_count() << ","
                << (gi ? std::to_string(*gi) : "") << "," << dc_count << "," << degree_max
                << "," << positive << "," << (sym ? 1 : 0) << "," << ms << "\n";
    }
    if ((i + 1 - start) % opt.every == 0) write_checkpoint(opt.checkpoint, i + 1);
  }
  write_checkpoint(opt.checkpoint, static_cast<long long>(records.size()));

  if (opt.json) {
    Json config;
    config["input"] = opt.input.empty() ? "-" : opt.input;
    config["format"] = opt.format;
    config["slow"] = opt.slow;
    config["resume_from"] = start;
    Json result;
    result["records"] = std::move(rows);
    result["violation"] = violation;
    emit(envelope("census", config, result, total.ms(), opt.timing), true);
  }
  return violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bicircular double circuits, flow lattices, GSP certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  VerifyOptions vo;
  CLI::App* verify = app.add_subcommand(
      "verify-girth5", "check that B(G) of a girth >= 5 graph has no positive double circuit");
  auto* vnamed = verify->add_option("--named", vo.named, "catalog graph name");
  verify->add_option("--file", vo.file, "graph file, or - for stdin")->excludes(vnamed);
  verify->add_option("--format", vo.format, "edge-list, graph6, or json")
      ->check(CLI::IsMember({"edge-list", "graph6", "json"}));
  verify->add_flag("--slow", vo.slow, "raise the edge cap from 16 to 30");
  verify->add_flag("--json", vo.json, "machine-readable report");
  verify->add_flag("--timing", vo.timing, "measure runtime (breaks byte reproducibility)");

  CertifyOptions co;
  CLI::App* certify = app.add_subcommand("certify", "GSP / coGSP certificate for an orientation");
  auto* cnamed = certify->add_option("--named", co.named, "catalog graph name");
  certify->add_option("--file", co.file, "graph file, or - for stdin")->excludes(cnamed);
  certify->add_option("--format", co.format, "edge-list, graph6, or json")
      ->check(CLI::IsMember({"edge-list", "graph6", "json"}));
  certify->add_option("--lattice-path", co.lattice_path, "bounds UPPER,LOWER, e.g. NNEE,EENN");
  certify->add_flag("--graphic", co.graphic, "graphic matroid of the input graph");
  certify->add_flag("--bicircular", co.bicircular, "bicircular matroid of the input graph (default)");
  certify->add_option("--mode", co.mode, "gsp or cogsp")->required();
  certify->add_option("--seed", co.seed, "realization seed");
  certify->add_option("--max-elements", co.max_elements, "element cap");
  certify->add_option("--max-removals", co.max_removals, "|delete|+|contract| cap");
  certify->add_option("--max-minors", co.max_minors, "surveyed minor cap");
  certify->add_option("--reorient", co.reorient_count, "also certify k seeded reorientations");
  certify->add_flag("--json", co.json, "machine-readable report");
  certify->add_flag("--timing", co.timing, "measure runtime (breaks byte reproducibility)");

  CensusOptions so;
  CLI::App* census = app.add_subcommand("census", "per-graph double circuit census (CSV)");
  census->add_option("input", so.input, "record file, or - for stdin");
  census->add_option("--format", so.format, "graph6 or edge-list")
      ->check(CLI::IsMember({"graph6", "edge-list"}));
  census->add_flag("--json", so.json, "JSON envelope instead of CSV");
  census->add_flag("--timing", so.timing, "fill runtime_ms (breaks byte reproducibility)");
  census->add_flag("--slow", so.slow, "raise the per-record edge cap from 18 to 30");
  census->add_option("--checkpoint", so.checkpoint, "progress file");
  census->add_flag("--resume", so.resume, "skip records already in the checkpoint");
  census->add_option("--every", so.every, "checkpoint frequency")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(vo);
    if (certify->parsed()) return run_certify(co);
    return run_census(so);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const GenericityError& e) {
    std::cerr << "realization failed: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 4;
  }
}
