#include "symdyn/analysis.hpp"

#include <boost/version.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <sstream>

#include "symdyn/coupled.hpp"
#include "symdyn/digraph.hpp"
#include "symdyn/error.hpp"
#include "symdyn/kasner.hpp"
#include "symdyn/semiconj.hpp"

namespace symdyn {

using nlohmann::json;

std::string version_string() { return SYMDYN_VERSION; }

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigParse, what); }

// Accepts plain numbers and strings such as "pi", "-pi/3", "5pi/3", "2*pi/3".
double parse_angle(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) bad(where + ": expected a number or a multiple of pi");
  static const std::regex re(R"(^\s*(-?[0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch m;
  const std::string s = v.get<std::string>();
  if (!std::regex_match(s, m, re)) bad(where + ": cannot read '" + s + "' as a multiple of pi");
  double k = 1.0;
  const std::string ks = m[1].str();
  if (ks == "-") {
    k = -1.0;
  } else if (!ks.empty()) {
    k = std::stod(ks);
  }
  const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
  if (den == 0.0) bad(where + ": division by zero");
  return k * kPi / den;
}

std::vector<std::vector<int>> parse_rows(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where + ": expected an array of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& r : v) {
    if (!r.is_array()) bad(where + ": each row must be an array");
    std::vector<int> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) bad(where + ": entries must be integers");
      row.push_back(x.get<int>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Domain parse_domain(const json& v) {
  if (!v.is_string()) bad("map.piecewise_linear.domain: expected \"interval\" or \"circle\"");
  const auto s = v.get<std::string>();
  if (s == "interval") return Domain::interval();
  if (s == "circle") return Domain::circle();
  bad("map.piecewise_linear.domain: expected \"interval\" or \"circle\", got '" + s + "'");
}

struct Job {
  std::optional<PiecewiseMonotoneMap> map;
  std::optional<Partition> partition;
  std::optional<TransitionMatrix> canonical_matrix;
};

Job build_job(const AnalysisConfig& cfg) {
  Job job;
  const json& m = cfg.map;
  if (m.contains("builtin")) {
    BuiltinParams params;
    if (m.contains("params") && m["params"].contains("matrix")) {
      params.matrix = TransitionMatrix::from_rows(parse_rows(m["params"]["matrix"], "map.params.matrix"));
    }
    MapInstance inst = make_builtin(m["builtin"].get<std::string>(), params);
    job.map.emplace(std::move(inst.map));
    job.partition.emplace(std::move(inst.partition));
    job.canonical_matrix.emplace(std::move(inst.matrix));
  } else {
    const json& pl = m["piecewise_linear"];
    const Domain d = parse_domain(pl.value("domain", json("interval")));
    std::vector<double> xs, ys;
    for (const auto& x : pl.at("breakpoints")) xs.push_back(parse_angle(x, "map.piecewise_linear.breakpoints"));
    for (const auto& y : pl.at("values")) ys.push_back(parse_angle(y, "map.piecewise_linear.values"));
    job.map.emplace(make_piecewise_linear(d, xs, ys));
    std::vector<Arc> laps;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) laps.push_back(d.arc_between(xs[k], xs[k + 1]));
    job.partition.emplace(d, std::move(laps));
  }
  if (cfg.partition.is_array()) {
    const Domain& d = job.map->domain();
    std::vector<Arc> pieces;
    for (const auto& pc : cfg.partition) {
      if (!pc.is_array() || pc.size() != 2) bad("partition: each piece must be [start, end]");
      pieces.push_back(d.arc_between(parse_angle(pc[0], "partition"), parse_angle(pc[1], "partition")));
    }
    job.partition.emplace(d, std::move(pieces));
    job.canonical_matrix.reset();
  }
  return job;
}

json arc_json(const Domain& d, const Arc& a) { return json::array({d.normalize(a.start), d.normalize(a.start) + a.length}); }

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json series_json(const Series& s) {
  json out = json::array();
  for (const auto& [n, v] : s) out.push_back(json::array({n, v}));
  return out;
}

json versions_json() {
  return {{"symdyn", SYMDYN_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"boost", BOOST_LIB_VERSION},
          {"compiler", __VERSION__}};
}

class Stages {
 public:
  explicit Stages(json& report) : report_(report) {}

  // Runs fn, timing it; module errors become report error records.
  bool run(const std::string& name, const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      fn();
    } catch (const Error& e) {
      report_["errors"].push_back({{"stage", name}, {"code", to_string(e.code())}, {"message", e.what()}});
      ok = false;
    } catch (const std::exception& e) {
      report_["errors"].push_back({{"stage", name}, {"code", "Internal"}, {"message", e.what()}});
      ok = false;
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    report_["timings"][name] = dt.count();
    return ok;
  }

 private:
  json& report_;
};

json base_report(const AnalysisConfig& cfg) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["input"] = cfg.raw;
  r["errors"] = json::array();
  r["timings"] = json::object();
  r["versions"] = versions_json();
  return r;
}

}  // namespace

AnalysisConfig parse_config(const json& doc) {
  if (!doc.is_object()) bad("config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& k = it.key();
    if (k != "map" && k != "partition" && k != "matrix" && k != "options") bad("unknown top-level field '" + k + "'");
  }
  AnalysisConfig cfg;
  cfg.raw = doc;
  if (!doc.contains("map")) bad("missing field 'map'");
  cfg.map = doc["map"];
  if (cfg.map.is_string()) cfg.map = json{{"builtin", cfg.map}};
  if (!cfg.map.is_object()) bad("map: expected an object or a builtin name");
  const bool builtin = cfg.map.contains("builtin");
  const bool pl = cfg.map.contains("piecewise_linear");
  if (builtin == pl) bad("map: give exactly one of 'builtin' or 'piecewise_linear'");
  if (builtin && !cfg.map["builtin"].is_string()) bad("map.builtin: expected a name");
  if (builtin && cfg.map.contains("params")) {
    const json& p = cfg.map["params"];
    if (!p.is_object()) bad("map.params: expected an object");
    if (p.contains("matrix")) parse_rows(p["matrix"], "map.params.matrix");
  }
  if (pl) {
    const json& pl_map = cfg.map["piecewise_linear"];
    if (!pl_map.is_object() || !pl_map.contains("breakpoints") || !pl_map.contains("values") ||
        !pl_map["breakpoints"].is_array() || !pl_map["values"].is_array()) {
      bad("map.piecewise_linear: needs arrays 'breakpoints' and 'values'");
    }
  }
  if (doc.contains("partition")) {
    cfg.partition = doc["partition"];
    if (!(cfg.partition == json("canonical")) && !cfg.partition.is_array()) {
      bad("partition: expected \"canonical\" or a list of [start, end] pieces");
    }
  }
  if (doc.contains("matrix")) {
    cfg.matrix = doc["matrix"];
    if (cfg.matrix.is_string()) {
      if (cfg.matrix != "infer") bad("matrix: expected \"infer\" or a 0/1 array");
    } else {
      parse_rows(cfg.matrix, "matrix");
    }
  }
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) bad("options: expected an object");
    auto& op = cfg.options;
    for (auto it = o.begin(); it != o.end(); ++it) {
      const auto& k = it.key();
      const json& v = it.value();
      if (k == "depth" || k == "n_max" || k == "preimage_samples" || k == "seed" || k == "enumeration_cap") {
        if (!v.is_number_integer() && !(k == "enumeration_cap" && v.is_number())) bad("options." + k + ": expected an integer");
      }
      if (k == "depth") {
        op.depth = v.get<int>();
      } else if (k == "n_max") {
        op.n_max = v.get<int>();
      } else if (k == "tol") {
        if (!v.is_number()) bad("options.tol: expected a number");
        op.tol = v.get<double>();
      } else if (k == "enumeration_cap") {
        op.enumeration_cap = static_cast<std::size_t>(v.get<double>());
      } else if (k == "emit_csv") {
        if (!v.is_array()) bad("options.emit_csv: expected a list of series names");
        for (const auto& s : v) op.emit_csv.push_back(s.get<std::string>());
      } else if (k == "output_path") {
        op.output_path = v.get<std::string>();
      } else if (k == "preimage_samples") {
        op.preimage_samples = v.get<int>();
      } else if (k == "seed") {
        op.seed = v.get<std::uint64_t>();
      } else {
        bad("options: unknown field '" + k + "'");
      }
    }
  }
  const auto& op = cfg.options;
  if (op.depth < 2) bad("options.depth must be >= 2");
  if (op.n_max < 2) bad("options.n_max must be >= 2");
  if (!(op.tol > 0.0)) bad("options.tol must be > 0");
  if (op.enumeration_cap < 1000) bad("options.enumeration_cap must be >= 1000");
  if (op.preimage_samples < 0) bad("options.preimage_samples must be >= 0");
  for (const auto& s : op.emit_csv)
    if (s != "diameters" && s != "entropy") bad("options.emit_csv: unknown series '" + s + "' (diameters, entropy)");
  return cfg;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open config '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return parse_config(doc);
}

AnalysisResult run_analysis(const AnalysisConfig& cfg) {
  const auto& op = cfg.options;
  AnalysisResult res;
  json& r = res.report;
  r = base_report(cfg);
  Stages st(r);

  Job job;
  if (!st.run("build", [&] { job = build_job(cfg); })) return res;
  const PiecewiseMonotoneMap& t = *job.map;
  const Partition& p = *job.partition;
  const Domain& d = t.domain();
  r["map"] = {{"name", t.name()}, {"domain", d.is_circle() ? "circle" : "interval"}};
  json pieces = json::array();
  for (const Arc& a : p.pieces()) pieces.push_back(arc_json(d, a));
  r["partition"] = pieces;

  std::optional<TransitionMatrix> a;
  if (!st.run("matrix", [&] {
        if (cfg.matrix.is_array()) {
          a = TransitionMatrix::from_rows(parse_rows(cfg.matrix, "matrix"));
          r["matrix_source"] = "given";
        } else {
          a = infer_matrix(t, p, op.tol);
          r["matrix_source"] = "inferred";
        }
        r["matrix"] = a->to_rows();
      })) {
    return res;
  }

  st.run("spectral", [&] {
    const SpectralResult sr = spectral_radius(*a);
    r["spectral"] = {{"lambda", sr.lambda}, {"log_lambda", std::log(sr.lambda)}, {"residual", sr.residual}};
    const Primitivity pr = is_primitive(*a);
    r["matrix_flags"] = {{"irreducible", is_irreducible(*a)},
                         {"primitive", pr.primitive},
                         {"primitive_exponent", pr.exponent ? json(*pr.exponent) : json(nullptr)},
                         {"max_row_sum", a->max_row_sum()}};
  });

  std::optional<VerificationReport> rep;
  st.run("verification", [&] {
    rep = verify(t, p, *a, op.tol);
    r["verification"] = {{"covering", rep->covering},
                         {"equality", rep->equality},
                         {"strict", rep->strict},
                         {"min_gap", rep->min_gap},
                         {"partition_covering", rep->partition_covering},
                         {"boundary_invariant", rep->boundary_invariant},
                         {"expansion_factor", opt(rep->expansion_factor)},
                         {"min_abs_slope", rep->min_abs_slope},
                         {"tol", rep->tol},
                         {"notes", rep->notes}};
  });

  std::optional<SingletonEvidence> ev;
  st.run("singleton", [&] {
    ev = singleton_check(t, p, *a, op.depth, 1e-12, op.enumeration_cap);
    r["singleton"] = {{"depth", ev->depth},
                      {"max_diameter", ev->max_diameter},
                      {"decreasing", ev->decreasing},
                      {"diameter_table", series_json(ev->diameter_table)},
                      {"widest_word", ev->widest_word}};
    res.csv["diameters"] = to_csv(ev->diameter_table);
  });

  json estimates = json::array();
  st.run("entropy_estimates", [&] {
    Series s;
    for (const auto& c : entropy_by_cylinders(t, p, op.n_max, op.enumeration_cap)) {
      estimates.push_back({{"n", c.n}, {"count", c.count}, {"estimate", c.estimate}});
      s.emplace_back(c.n, c.estimate);
    }
    res.csv["entropy"] = to_csv(s);
  });

  st.run("verdict", [&] {
    if (!rep) throw Error(ErrorCode::BadParams, "no verification report to judge");
    const EntropyVerdict v = entropy_verdict(*a, *rep, ev);
    r["entropy"] = {{"lower", opt(v.lower)},
                    {"exact", opt(v.exact)},
                    {"growth_constant", opt(v.growth_constant)},
                    {"estimates", estimates},
                    {"justifications", v.justifications}};
    r["chaos"] = {{"li_yorke", v.li_yorke}, {"devaney", v.devaney}, {"justifications", v.justifications}};
  });
  if (!r.contains("entropy")) {
    r["entropy"] = {{"lower", nullptr}, {"exact", nullptr}, {"growth_constant", nullptr},
                    {"estimates", estimates}, {"justifications", json::array()}};
  }

  r["preimage_samples"] = nullptr;
  if (op.preimage_samples > 0) {
    st.run("preimages", [&] {
      std::mt19937_64 rng(op.seed);
      std::uniform_real_distribution<double> unif(0.0, d.length());
      std::vector<double> ys(static_cast<std::size_t>(op.preimage_samples));
      for (double& y : ys) y = unif(rng);
      const auto counts = preimage_counts(t, p, *a, ys, op.depth, 1e-12, op.enumeration_cap);
      json arr = json::array();
      for (std::size_t k = 0; k < ys.size(); ++k) arr.push_back({{"y", ys[k]}, {"count", counts[k]}});
      r["preimage_samples"] = {{"depth", op.depth}, {"seed", op.seed}, {"points", arr}};
    });
  }
  for (const auto& name : op.emit_csv)
    if (!res.csv.count(name)) res.csv[name] = "n,value\n";
  for (auto it = res.csv.begin(); it != res.csv.end();) {
    const bool wanted = std::find(op.emit_csv.begin(), op.emit_csv.end(), it->first) != op.emit_csv.end();
    it = wanted ? std::next(it) : res.csv.erase(it);
  }
  return res;
}

AnalysisResult run_entropy(const AnalysisConfig& cfg) {
  AnalysisResult res;
  json& r = res.report;
  r = base_report(cfg);
  Stages st(r);
  Job job;
  if (!st.run("build", [&] { job = build_job(cfg); })) return res;
  st.run("entropy_estimates", [&] {
    json arr = json::array();
    Series s;
    for (const auto& c : entropy_by_cylinders(*job.map, *job.partition, cfg.options.n_max, cfg.options.enumeration_cap)) {
      arr.push_back({{"n", c.n}, {"count", c.count}, {"estimate", c.estimate}});
      s.emplace_back(c.n, c.estimate);
    }
    r["entropy"] = {{"estimates", arr}};
    res.csv["entropy"] = to_csv(s);
  });
  if (std::find(cfg.options.emit_csv.begin(), cfg.options.emit_csv.end(), "entropy") == cfg.options.emit_csv.end()) {
    res.csv.clear();
  }
  return res;
}

json matrix_report(const TransitionMatrix& a, int n_words) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["matrix"] = a.to_rows();
  const SpectralResult sr = spectral_radius(a);
  r["spectral"] = {{"lambda", sr.lambda}, {"log_lambda", std::log(sr.lambda)}, {"residual", sr.residual}};
  if (sr.eigvec) r["spectral"]["perron_vector"] = *sr.eigvec;
  const Primitivity pr = is_primitive(a);
  r["matrix_flags"] = {{"irreducible", is_irreducible(a)},
                       {"primitive", pr.primitive},
                       {"primitive_exponent", pr.exponent ? json(*pr.exponent) : json(nullptr)},
                       {"max_row_sum", a.max_row_sum()}};
  const TransitionGraph g(a);
  json comps = json::array();
  for (const auto& c : strongly_connected_components(g)) {
    json one = json::array();
    for (int v : c) one.push_back(v + 1);
    comps.push_back(one);
  }
  r["components"] = comps;
  const auto cyc = find_full_cycle(g);
  if (cyc) {
    json walk = json::array();
    for (int v : *cyc) walk.push_back(v + 1);
    r["full_cycle"] = walk;
  } else {
    r["full_cycle"] = nullptr;
  }
  json counts = json::array();
  for (int n = 1; n <= n_words; ++n) counts.push_back({{"n", n}, {"count", count_words(a, n).str()}});
  r["word_counts"] = counts;
  return r;
}

json kasner_report(int depth, int horizon, int samples, std::uint64_t seed) {
  json doc = {{"map", {{"builtin", "kasner"}}},
              {"matrix", "infer"},
              {"options", {{"depth", depth}, {"n_max", depth}, {"preimage_samples", samples}, {"seed", seed}}}};
  AnalysisResult res = run_analysis(parse_config(doc));
  json r = res.report;

  constexpr int kGrid = 10000;
  const Domain c = Domain::circle();
  double min_slope = 1e300, max_slope = 0.0, oracle = 0.0;
  for (int k = 0; k < kGrid; ++k) {
    const double th = kTwoPi * k / kGrid;
    const double s = std::abs(kasner_derivative(th));
    min_slope = std::min(min_slope, s);
    max_slope = std::max(max_slope, s);
    bool near_fixed = false;
    for (double f : {kKasnerT1, kKasnerT2, kKasnerT3}) near_fixed = near_fixed || c.distance(th, f) <= 1e-6;
    if (!near_fixed) oracle = std::max(oracle, c.distance(kasner_angle(th), kasner_geometric(th)));
  }
  r["kasner"]["derivative"] = {{"grid", kGrid}, {"min_abs", min_slope}, {"max_abs", max_slope}};
  r["kasner"]["oracle_max_deviation"] = oracle;
  const MapInstance k = make_kasner();
  r["kasner"]["preimage_count_at_pi"] = preimage_count(k.map, k.partition, k.matrix, kPi, 10);
  const ScrambledPairWitness w = scrambled_pair_witness(horizon);
  r["kasner"]["scrambled_pair"] = {{"horizon", w.horizon},        {"min_distance", w.min_distance},
                                   {"argmin", w.argmin},          {"max_distance", w.max_distance},
                                   {"argmax", w.argmax},          {"certified", w.certified}};
  return r;
}

void write_outputs(const AnalysisResult& result, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path out(path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  {
    std::ofstream f(out);
    if (!f) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    f << result.report.dump(2) << '\n';
  }
  for (const auto& [name, text] : result.csv) {
    fs::path csv = out;
    csv.replace_extension();
    csv += "." + name + ".csv";
    std::ofstream f(csv);
    if (!f) throw Error(ErrorCode::Io, "cannot write '" + csv.string() + "'");
    f << text;
  }
}

}  // namespace symdyn
