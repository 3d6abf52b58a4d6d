#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "symdyn/analysis.hpp"
#include "symdyn/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAnalysis = 3;

struct Common {
  std::string config;
  std::string out;
  std::vector<std::string> emit_csv;
  std::optional<int> depth;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

void apply(const Common& c, symdyn::AnalysisOptions& o, bool depth_is_n_max) {
  if (c.depth) (depth_is_n_max ? o.n_max : o.depth) = *c.depth;
  if (c.tol) o.tol = *c.tol;
  if (c.seed) o.seed = *c.seed;
  for (const auto& s : c.emit_csv) o.emit_csv.push_back(s);
  if (!c.out.empty()) o.output_path = c.out;
}

int emit(const symdyn::AnalysisResult& res, const std::optional<std::string>& path) {
  if (path) {
    symdyn::write_outputs(res, *path);
  } else {
    std::cout << res.report.dump(2) << '\n';
    for (const auto& [name, text] : res.csv) std::cerr << "# " << name << "\n" << text;
  }
  if (!res.ok()) {
    bool config = false;
    for (const auto& e : res.report["errors"]) {
      std::cerr << "error [" << e["stage"].get<std::string>() << "] " << e["message"].get<std::string>() << '\n';
      // A job that cannot even be built is a bad config.
      config = config || e["stage"] == "build";
    }
    return config ? kExitConfig : kExitAnalysis;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool need_config) {
  auto* opt = sub->add_option("--config", c.config, "JSON job description")->check(CLI::ExistingFile);
  if (need_config) opt->required();
  sub->add_option("--out", c.out, "write the JSON report here (CSV series go next to it)");
  sub->add_option("--emit-csv", c.emit_csv, "series to export as CSV: diameters, entropy");
  sub->add_option("--depth", c.depth, "cylinder depth");
  sub->add_option("--tol", c.tol, "containment tolerance (fraction of the domain length)");
  sub->add_option("--seed", c.seed, "seed for sampled preimage points");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic dynamics of coupled-expanding interval and circle maps"};
  app.set_version_flag("--version", symdyn::version_string());
  app.require_subcommand(1);

  Common an, en, km;
  auto* analyze = app.add_subcommand("analyze", "run the full pipeline on a job config");
  add_common(analyze, an, true);
  auto* entropy = app.add_subcommand("entropy", "cylinder-count entropy estimates only (--depth sets n_max)");
  add_common(entropy, en, true);

  std::string matrix_text;
  std::string matrix_out;
  std::string matrix_config;
  int words = 10;
  auto* matrix = app.add_subcommand("matrix", "spectral and graph analysis of a bare 0/1 matrix");
  matrix->add_option("--matrix", matrix_text, "matrix as JSON, e.g. [[1,1],[1,0]]");
  matrix->add_option("--config", matrix_config, "JSON file with a \"matrix\" field")->check(CLI::ExistingFile);
  matrix->add_option("--depth", words, "largest word length to count");
  matrix->add_option("--out", matrix_out, "write the JSON report here");

  int horizon = 200;
  int samples = 100;
  auto* kasner = app.add_subcommand("kasner", "the Kasner circle map: entropy, chaos verdicts, preimages");
  kasner->add_option("--depth", km.depth, "cylinder depth (default 12)");
  kasner->add_option("--seed", km.seed, "seed for sampled preimage points");
  kasner->add_option("--horizon", horizon, "orbit horizon for the scrambled pair");
  kasner->add_option("--samples", samples, "number of sampled preimage points");
  kasner->add_option("--out", km.out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*analyze || *entropy) {
      const bool is_entropy = entropy->parsed();
      const Common& c = is_entropy ? en : an;
      auto cfg = symdyn::load_config(c.config);
      apply(c, cfg.options, is_entropy);
      cfg = symdyn::parse_config([&] {
        auto doc = cfg.raw;
        auto& o = doc["options"];
        o["depth"] = cfg.options.depth;
        o["n_max"] = cfg.options.n_max;
        o["tol"] = cfg.options.tol;
        o["seed"] = cfg.options.seed;
        o["emit_csv"] = cfg.options.emit_csv;
        if (cfg.options.output_path) o["output_path"] = *cfg.options.output_path;
        return doc;
      }());
      const auto res = is_entropy ? symdyn::run_entropy(cfg) : symdyn::run_analysis(cfg);
      return emit(res, cfg.options.output_path);
    }
    if (*matrix) {
      nlohmann::json doc;
      if (!matrix_text.empty()) {
        doc = nlohmann::json::parse(matrix_text);
      } else if (!matrix_config.empty()) {
        std::ifstream in(matrix_config);
        in >> doc;
        doc = doc.at("matrix");
      } else {
        std::cerr << "matrix: give --matrix or --config\n";
        return kExitConfig;
      }
      std::optional<symdyn::TransitionMatrix> a;
      try {
        a = symdyn::TransitionMatrix::from_rows(doc.get<std::vector<std::vector<int>>>());
      } catch (const symdyn::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
      }
      const auto r = symdyn::matrix_report(*a, words);
      if (matrix_out.empty()) {
        std::cout << r.dump(2) << '\n';
      } else {
        std::ofstream(matrix_out) << r.dump(2) << '\n';
      }
      return kExitOk;
    }
    if (*kasner) {
      const auto r = symdyn::kasner_report(km.depth.value_or(12), horizon, samples, km.seed.value_or(0));
      if (km.out.empty()) {
        std::cout << r.dump(2) << '\n';
      } else {
        std::ofstream(km.out) << r.dump(2) << '\n';
      }
      return r["errors"].empty() ? kExitOk : kExitAnalysis;
    }
  } catch (const symdyn::Error& e) {
    std::cerr << e.what() << '\n';
    const bool config = e.code() == symdyn::ErrorCode::ConfigParse || e.code() == symdyn::ErrorCode::Io;
    return config ? kExitConfig : kExitAnalysis;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ConfigParse: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
