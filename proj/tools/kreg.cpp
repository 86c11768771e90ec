// kreg: ODEs, recurrences and counts for regular-graph models.
//
//   kreg solve "se,ll,{4}" --emit ode
//   kreg solve --model "se,ll,{3}" --emit terms --terms 8 --check
//   kreg solve --batch models.txt --jobs 4 --emit rec

#include "kreg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<kreg::ModelSpec> read_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read batch file " + path);
  std::vector<kreg::ModelSpec> models;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    models.push_back(kreg::parse_model(line.substr(b, e - b + 1)));
  }
  if (models.empty()) throw std::invalid_argument("batch file lists no models");
  return models;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear ODEs and recurrences for regular-graph models"};
  app.require_subcommand(1);
  CLI::App* solve = app.add_subcommand("solve", "derive the ODE for a model and emit an artifact");

  std::string model_pos, model_opt, emit = "ode", format = "text", out_path, batch;
  long terms = 10;
  int max_oracle_n = 10, jobs = 1;
  bool check = false, trace = false, dump_gb = false, dump_ghat = false, dump_gens = false;

  solve->add_option("spec", model_pos, "model such as se,ll,{4} (same as --model)");
  solve->add_option("--model", model_opt, "model such as se,ll,{4}");
  solve->add_option("--emit", emit, "ode | rec | rec-egf | terms | gb | ghat")
      ->check(CLI::IsMember({"ode", "rec", "rec-egf", "terms", "gb", "ghat"}));
  solve->add_option("--terms", terms, "number of terms for --emit terms")->check(CLI::NonNegativeNumber);
  solve->add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
  solve->add_flag("--check", check, "compare unrolled counts with both oracles");
  solve->add_option("--max-oracle-n", max_oracle_n, "largest n compared by --check")->check(CLI::NonNegativeNumber);
  solve->add_option("--out", out_path, "write the artifact here instead of stdout");
  solve->add_option("--batch", batch, "file with one model per line");
  solve->add_option("--jobs", jobs, "threads for --batch")->check(CLI::PositiveNumber);
  solve->add_flag("--trace", trace, "print and verify the reduction certificates");
  solve->add_flag("--dump-gb", dump_gb, "print the Groebner basis to stderr");
  solve->add_flag("--dump-ghat", dump_ghat, "print the reduced forms to stderr");
  solve->add_flag("--dump-generators", dump_gens, "print the twisted generators to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kreg::kExitUsage;
  }

  kreg::RunConfig cfg;
  std::vector<kreg::ModelSpec> models;
  try {
    if (!model_pos.empty() && !model_opt.empty() && model_pos != model_opt)
      throw std::invalid_argument("model given twice");
    const std::string& text = model_opt.empty() ? model_pos : model_opt;
    if (!batch.empty()) {
      if (!text.empty()) throw std::invalid_argument("--batch excludes a model argument");
      models = read_batch(batch);
    } else {
      if (text.empty()) throw std::invalid_argument("no model given");
      cfg.model = kreg::parse_model(text);
    }
    cfg.emit = kreg::parse_emit(emit);
    cfg.format = kreg::parse_format(format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kreg::kExitUsage;
  }
  cfg.terms = terms;
  cfg.check = check;
  cfg.max_oracle_n = max_oracle_n;
  cfg.trace = trace;
  cfg.dump_gb = dump_gb;
  cfg.dump_ghat = dump_ghat;
  cfg.dump_generators = dump_gens;

  kreg::RunOutput res;
  try {
    res = models.empty() ? kreg::run(cfg) : kreg::run_batch(models, cfg, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kreg::kExitFail;
  }

  std::cerr << res.err;
  if (out_path.empty()) {
    std::cout << res.out;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << res.out;
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kreg::kExitFail;
    }
  }
  return res.status;
}
