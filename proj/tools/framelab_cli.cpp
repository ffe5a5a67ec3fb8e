#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framelab.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_check_failure = 1;
constexpr int exit_usage = 2;

struct Flags {
  std::string config_file;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::vector<double> p_grid;
  double rmax = 0.0;
  std::string out;
  std::size_t threads = 0;
  std::string matrix;
  double p = 0.0;
  std::string strategy;
};

void add_common(CLI::App* sub, Flags& f, std::vector<CLI::Option*>& opts) {
  opts.push_back(sub->add_option("--config", f.config_file, "JSON config file; flags override its values")
                     ->check(CLI::ExistingFile));
  opts.push_back(sub->add_option("--seed", f.seed, "Base seed"));
  opts.push_back(sub->add_option("--dim", f.dim, "Dimension"));
  opts.push_back(sub->add_option("--trials", f.trials, "Number of seeded trials"));
  opts.push_back(sub->add_option("--p-grid", f.p_grid, "Exponents, comma separated")->delimiter(','));
  opts.push_back(sub->add_option("--rmax", f.rmax, "Quadrature radius, < 1"));
  opts.push_back(sub->add_option("--out", f.out, "Output directory"));
  opts.push_back(sub->add_option("--threads", f.threads, "Worker threads"));
}

framelab::CampaignConfig build_config(framelab::Command cmd, const Flags& f, const CLI::App* sub) {
  framelab::CampaignConfig c;
  c.command = cmd;
  if (!f.config_file.empty()) {
    framelab::apply_config_json(c, framelab::read_json_file(f.config_file));
    c.command = cmd;
  }
  auto given = [&](const char* name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--seed")) c.seed = f.seed;
  if (given("--dim")) c.dim = f.dim;
  if (given("--trials")) c.trials = f.trials;
  if (given("--p-grid")) c.p_grid = f.p_grid;
  if (given("--rmax")) c.rmax = f.rmax;
  if (given("--out")) c.output_dir = f.out;
  if (given("--threads")) c.threads = f.threads;
  if (given("--matrix")) c.matrix_file = f.matrix;
  if (given("--p")) c.p = f.p;
  if (given("--strategy")) c.strategy = f.strategy;
  c.validate();
  return c;
}

void print_summary(const framelab::CampaignReport& rep) {
  for (const auto& r : rep.records) {
    std::printf("%s  %-32s", r.passed ? "PASS" : "FAIL", r.tag.c_str());
    if (!std::isnan(r.p)) std::printf("  p=%s", framelab::format_double(r.p).c_str());
    std::printf("\n");
  }
  std::printf("%zu checks, %zu failed, %.2f s; report in %s\n", rep.records.size(), rep.failures(),
              rep.wall_time_seconds, rep.config.output_dir.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame-based Schatten norm verification campaigns"};
  app.require_subcommand(1);

  Flags flags;
  struct Sub {
    framelab::Command cmd;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  std::vector<CLI::Option*> opts;
  for (auto cmd : {framelab::Command::verify_theorems, framelab::Command::counterexamples, framelab::Command::bergman,
                   framelab::Command::norm_estimate}) {
    const char* help = "";
    switch (cmd) {
      case framelab::Command::verify_theorems: help = "Seeded certificates for the frame norm formulas"; break;
      case framelab::Command::counterexamples: help = "Growth studies for the explicit counterexamples"; break;
      case framelab::Command::bergman: help = "Bergman space quadrature, subharmonicity and sampling frames"; break;
      case framelab::Command::norm_estimate: help = "Schatten norm of a matrix file with frame-ensemble bounds"; break;
    }
    CLI::App* sub = app.add_subcommand(std::string(framelab::to_string(cmd)), help);
    add_common(sub, flags, opts);
    if (cmd == framelab::Command::norm_estimate) {
      sub->add_option("--matrix", flags.matrix, "Matrix JSON file")->required()->check(CLI::ExistingFile);
      sub->add_option("--p", flags.p, "Exponent p > 0")->required();
      sub->add_option("--strategy", flags.strategy, "singular_basis_exact or frame_ensemble")
          ->check(CLI::IsMember({"singular_basis_exact", "frame_ensemble"}));
    }
    subs.push_back({cmd, sub});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    for (const auto& s : subs) {
      if (!s.app->parsed()) continue;
      const framelab::CampaignConfig cfg = build_config(s.cmd, flags, s.app);
      framelab::CampaignReport rep;
      switch (s.cmd) {
        case framelab::Command::verify_theorems: rep = framelab::run_verify_theorems(cfg); break;
        case framelab::Command::counterexamples: rep = framelab::run_counterexamples(cfg); break;
        case framelab::Command::bergman: rep = framelab::run_bergman(cfg); break;
        case framelab::Command::norm_estimate:
          rep = framelab::run_norm_estimate(framelab::read_matrix_file(cfg.matrix_file), cfg);
          break;
      }
      rep.write(cfg.output_dir);
      print_summary(rep);
      return rep.passed() ? exit_pass : exit_check_failure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
