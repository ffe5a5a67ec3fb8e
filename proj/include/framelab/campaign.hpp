#pragma once
//
// Seeded verification campaigns behind the command-line tool. Each campaign
// produces a list of check records; per-trial work fans out over a thread
// pool and is reduced in trial order, so reports do not depend on the
// thread count.
//

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "framelab/bergman.hpp"
#include "framelab/constructions.hpp"
#include "framelab/criteria.hpp"
#include "framelab/frames.hpp"
#include "framelab/io.hpp"
#include "framelab/parallel.hpp"
#include "framelab/random.hpp"
#include "framelab/spectral.hpp"

namespace framelab {

inline constexpr int report_schema_version = 1;

enum class Command { verify_theorems, counterexamples, bergman, norm_estimate };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::verify_theorems: return "verify-theorems";
    case Command::counterexamples: return "counterexamples";
    case Command::bergman: return "bergman";
    case Command::norm_estimate: return "norm-estimate";
  }
  return "?";
}

inline Command parse_command(std::string_view s) {
  if (s == "verify-theorems") return Command::verify_theorems;
  if (s == "counterexamples") return Command::counterexamples;
  if (s == "bergman") return Command::bergman;
  if (s == "norm-estimate") return Command::norm_estimate;
  throw domain_error("unknown command '" + std::string(s) + "'");
}

struct Tolerances {
  double certificate = 1e-9;  // one-sided norm inequalities and witness equalities
  double identity = 1e-10;    // algebraic identities (p = 2, Parseval, transfer)
  double synthesis = 1e-9;
  double jensen = 1e-10;
  double exact = 1e-12;       // closed forms that hold up to rounding
};

struct CampaignConfig {
  Command command = Command::verify_theorems;
  std::uint64_t seed = 1;
  std::size_t dim = 8;
  std::size_t trials = 200;
  std::vector<double> p_grid{0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  double rmax = 0.995;
  std::size_t threads = 1;
  std::filesystem::path output_dir = "framelab-out";
  Tolerances tol;
  // norm-estimate only
  std::filesystem::path matrix_file;
  double p = 2.0;
  std::string strategy = "frame_ensemble";

  void validate() const {
    if (dim < 1) throw domain_error("config: dim must be >= 1");
    if (trials < 1) throw domain_error("config: trials must be >= 1");
    if (p_grid.empty()) throw domain_error("config: p_grid must be nonempty");
    for (double q : p_grid)
      if (!(q > 0.0) || !std::isfinite(q)) throw domain_error("config: every p in p_grid must be > 0");
    if (!(rmax > 0.0 && rmax < 1.0)) throw domain_error("config: rmax must lie in (0, 1)");
    if (threads < 1) throw domain_error("config: threads must be >= 1");
    if (command == Command::norm_estimate) {
      if (!(p > 0.0)) throw domain_error("config: p must be > 0");
      if (strategy != "singular_basis_exact" && strategy != "frame_ensemble")
        throw domain_error("config: strategy must be singular_basis_exact or frame_ensemble");
    }
  }
};

// Config echo for reports. Thread count and output directory are execution
// details and are left out so that reports compare equal across them.
inline json config_to_json(const CampaignConfig& c) {
  json j{{"command", std::string(to_string(c.command))},
         {"seed", c.seed},
         {"dim", c.dim},
         {"trials", c.trials},
         {"p_grid", c.p_grid},
         {"rmax", c.rmax},
         {"tolerances",
          {{"certificate", c.tol.certificate},
           {"identity", c.tol.identity},
           {"synthesis", c.tol.synthesis},
           {"jensen", c.tol.jensen},
           {"exact", c.tol.exact}}}};
  if (c.command == Command::norm_estimate) {
    j["matrix_file"] = c.matrix_file.filename().string();
    j["p"] = c.p;
    j["strategy"] = c.strategy;
  }
  return j;
}

// Applies the keys present in a JSON config object; unknown keys are rejected.
inline void apply_config_json(CampaignConfig& c, const json& j) {
  if (!j.is_object()) throw io_error("config: expected a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "command") c.command = parse_command(v.get<std::string>());
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "dim") c.dim = v.get<std::size_t>();
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "p_grid") c.p_grid = v.get<std::vector<double>>();
      else if (key == "rmax") c.rmax = v.get<double>();
      else if (key == "threads") c.threads = v.get<std::size_t>();
      else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "matrix") c.matrix_file = v.get<std::string>();
      else if (key == "p") c.p = v.get<double>();
      else if (key == "strategy") c.strategy = v.get<std::string>();
      else if (key == "tolerances") {
        for (const auto& [tk, tv] : v.items()) {
          const double x = tv.get<double>();
          if (!(x > 0.0)) throw io_error("config: tolerance '" + tk + "' must be > 0");
          if (tk == "certificate") c.tol.certificate = x;
          else if (tk == "identity") c.tol.identity = x;
          else if (tk == "synthesis") c.tol.synthesis = x;
          else if (tk == "jensen") c.tol.jensen = x;
          else if (tk == "exact") c.tol.exact = x;
          else throw io_error("config: unknown tolerance '" + tk + "'");
        }
      } else {
        throw io_error("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& ex) {
    throw io_error(std::string("config: ") + ex.what());
  }
}

struct CheckRecord {
  std::string tag;
  double p = std::nan("");  // NaN when the check has no exponent
  bool passed = true;
  json measured = json::object();
  json tolerances = json::object();
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<CheckRecord> records;
  std::map<std::string, CsvTable> tables;  // extra CSV outputs by file name
  double wall_time_seconds = 0.0;

  std::size_t failures() const {
    return std::size_t(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.passed; }));
  }
  bool passed() const { return failures() == 0; }

  json to_json(bool include_wall_time = true) const {
    json recs = json::array();
    for (const auto& r : records) {
      json jr{{"tag", r.tag}};
      jr["p"] = std::isnan(r.p) ? json(nullptr) : json(r.p);
      jr["passed"] = r.passed;
      jr["measured"] = r.measured;
      jr["tolerances"] = r.tolerances;
      recs.push_back(std::move(jr));
    }
    json j{{"schema_version", report_schema_version},
           {"command", std::string(to_string(config.command))},
           {"config", config_to_json(config)},
           {"records", std::move(recs)},
           {"summary", {{"total", records.size()}, {"passed", records.size() - failures()}, {"failed", failures()}}},
           {"passed", passed()}};
    if (include_wall_time) j["wall_time_seconds"] = wall_time_seconds;
    return j;
  }

  // One CSV per check tag plus the extra tables.
  std::map<std::string, CsvTable> csv_tables() const {
    std::map<std::string, CsvTable> out;
    std::map<std::string, std::vector<std::string>> keys;
    for (const auto& r : records) {
      const std::string name = "checks_" + r.tag + ".csv";
      if (!out.contains(name)) {
        std::vector<std::string> header{"tag", "p", "passed"};
        std::vector<std::string> k;
        for (const auto& [key, v] : r.measured.items()) k.push_back(key);
        header.insert(header.end(), k.begin(), k.end());
        out.emplace(name, CsvTable(header));
        keys[name] = k;
      }
      std::vector<std::string> cells{r.tag, std::isnan(r.p) ? "" : format_double(r.p), r.passed ? "1" : "0"};
      for (const auto& k : keys[name]) {
        const json v = r.measured.value(k, json(nullptr));
        if (v.is_number_float()) cells.push_back(format_double(v.get<double>()));
        else if (v.is_null()) cells.push_back("");
        else if (v.is_string()) cells.push_back(v.get<std::string>());
        else cells.push_back(v.dump());
      }
      out.at(name).row(std::move(cells));
    }
    for (const auto& [name, t] : tables) out.insert_or_assign(name, t);
    return out;
  }

  void write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    write_json_file(dir / "report.json", to_json(true));
    for (const auto& [name, t] : csv_tables()) t.write(dir / name);
  }
};

namespace detail {

inline constexpr std::uint64_t op_stream = 21;
inline constexpr std::uint64_t herm_stream = 22;
inline constexpr std::uint64_t psd_stream = 23;
inline constexpr std::uint64_t vec_stream = 24;

struct TrialOperators {
  ComplexMatrix general;
  ComplexMatrix hermitian;
  ComplexMatrix psd;
};

inline TrialOperators trial_operators(std::size_t d, std::uint64_t s) {
  Rng a(derive_seed(s, op_stream)), b(derive_seed(s, herm_stream)), c(derive_seed(s, psd_stream));
  return {random_operator(d, a), random_hermitian(d, b), random_psd(d, c)};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

inline CheckRecord make_record(std::string tag, double p, bool passed, json measured, json tolerances) {
  return {std::move(tag), p, passed, std::move(measured), std::move(tolerances)};
}

// Signed excess of the extremal sample beyond ‖T‖_p^p in the forbidden direction.
inline double signed_gap(const CertificateReport& r) {
  const double scale = std::max({r.norm_value, std::abs(r.extremal_value), 1e-300});
  return r.direction == Direction::sup_below ? (r.extremal_value - r.norm_value) / scale
                                             : (r.norm_value - r.extremal_value) / scale;
}

inline CheckRecord certificate_record(const CertificateReport& r) {
  json m{{"samples", r.samples},
         {"violations", r.violations},
         {"max_signed_gap", signed_gap(r)},
         {"max_witness_defect", std::isnan(r.witness_value) ? 0.0 : rel(r.witness_value, r.norm_value)}};
  return make_record(r.tag, r.p, r.passed, std::move(m), {{"relative", r.tolerance}});
}

// Merges records with equal (tag, p) in first-seen order: keys named
// min_* take the minimum, samples/violations/count add up, anything else the maximum.
inline std::vector<CheckRecord> aggregate(const std::vector<std::vector<CheckRecord>>& per_trial) {
  std::vector<CheckRecord> out;
  std::map<std::pair<std::string, double>, std::size_t> index;
  for (const auto& trial : per_trial)
    for (const auto& r : trial) {
      const auto key = std::make_pair(r.tag, std::isnan(r.p) ? -1.0 : r.p);
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, out.size());
        CheckRecord c = r;
        c.measured["trials"] = 1;
        out.push_back(std::move(c));
        continue;
      }
      CheckRecord& c = out[it->second];
      c.passed = c.passed && r.passed;
      c.measured["trials"] = c.measured["trials"].get<std::size_t>() + 1;
      for (const auto& [k, v] : r.measured.items()) {
        json& cur = c.measured[k];
        if (!v.is_number() || !cur.is_number()) continue;
        if (k == "samples" || k == "violations" || k == "count") {
          cur = cur.get<std::size_t>() + v.get<std::size_t>();
        } else if (k.starts_with("min_")) {
          cur = std::min(cur.get<double>(), v.get<double>());
        } else {
          cur = std::max(cur.get<double>(), v.get<double>());
        }
      }
    }
  return out;
}

template <typename Clock = std::chrono::steady_clock>
double seconds_since(typename Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline void add_growth_rows(CsvTable& t, const std::string& name, const GrowthSeries& g) {
  const auto ratios = g.increment_ratios();
  const auto relinc = g.relative_increments();
  for (std::size_t k = 0; k < g.truncations.size(); ++k)
    t.row({name, std::to_string(g.truncations[k]), format_double(g.partial_sums[k]),
           std::isnan(ratios[k]) ? "" : format_double(ratios[k]),
           std::isnan(relinc[k]) ? "" : format_double(relinc[k]), std::string(to_string(g.verdict))});
}

inline json growth_json(const GrowthSeries& g) {
  return {{"verdict", std::string(to_string(g.verdict))},
          {"first_partial_sum", g.partial_sums.front()},
          {"last_partial_sum", g.partial_sums.back()},
          {"last_relative_increment", g.relative_increments().back()},
          {"nondecreasing", g.nondecreasing()}};
}

inline std::vector<CheckRecord> verify_trial(const CampaignConfig& cfg, std::size_t i) {
  const std::size_t d = cfg.dim;
  const std::uint64_t s = trial_seed(cfg.seed, i);
  const TrialOperators ops = trial_operators(d, s);
  const Tolerances& tol = cfg.tol;
  const CertificateOptions copt{tol.certificate};
  std::vector<CheckRecord> out;

  const Frame raw = trial_frame(d, s, copt.condition_target);
  const Frame onb = trial_onb(d, s);
  const Frame parseval = canonical_parseval(raw);
  const SpectralData sd = svd(ops.general);
  const Frame singular_onb = basis_frame(sd.right_vectors, "singular");

  for (double p : cfg.p_grid) {
    {
      const double exact = schatten_power_sum(sd.singular_values, p);
      const double via_basis = sum_norms(ops.general, singular_onb, p).value;
      const double defect = rel(via_basis, exact);
      out.push_back(make_record("singular-basis", p, defect <= tol.certificate, {{"max_rel_defect", defect}},
                                {{"relative", tol.certificate}}));
    }
    out.push_back(certificate_record(certify_norm_formula(ops.general, p, 1, s, copt)));
    if (p >= 1.0) out.push_back(certificate_record(certify_diag_formula(ops.hermitian, p, 1, s, copt)));
    if (p <= 1.0) out.push_back(certificate_record(certify_diag_formula(ops.psd, p, 1, s, copt)));
    out.push_back(certificate_record(certify_double_formula(p >= 2.0 ? ops.general : ops.hermitian, p, 1, s, copt)));

    {
      const DoubleSumBounds c = double_sum_bounds(ops.general, raw, p, tol.certificate);
      double excess = 0.0;
      if (c.upper_checked) excess = std::max(excess, (c.double_sum - c.upper_constant * c.norm_sum) /
                                                          std::max(c.double_sum, 1e-300));
      if (c.lower_checked) excess = std::max(excess, (c.lower_constant * c.norm_sum - c.double_sum) /
                                                          std::max(c.double_sum, 1e-300));
      out.push_back(make_record("double-sum-bounds", p, c.passed, {{"max_rel_excess", excess}}, {{"relative", tol.certificate}}));
    }
    if (p == 2.0) {
      const double a = sum_double(ops.general, parseval, 2.0).value;
      const double b = sum_norms(ops.general, parseval, 2.0).value;
      out.push_back(make_record("double-sum-parseval-equality", p, rel(a, b) <= tol.identity,
                                {{"max_rel_defect", rel(a, b)}}, {{"relative", tol.identity}}));
    }
  }

  {
    const EndpointReport hs = endpoint_suites(ops.general, 1, s, tol.identity, copt.condition_target);
    out.push_back(make_record("endpoint-hs", std::nan(""),
                              hs.hs_identity_defect <= tol.identity && hs.hs_parseval_defect <= tol.identity &&
                                  hs.hs_worst_violation <= tol.identity,
                              {{"max_identity_defect", hs.hs_identity_defect},
                               {"max_parseval_defect", hs.hs_parseval_defect},
                               {"max_enclosure_violation", hs.hs_worst_violation}},
                              {{"relative", tol.identity}}));
    const EndpointReport tr = endpoint_suites(ops.psd, 1, s, tol.identity, copt.condition_target);
    out.push_back(make_record("endpoint-trace", std::nan(""), tr.trace_suite_run && tr.passed,
                              {{"max_enclosure_violation", tr.trace_worst_violation}}, {{"relative", tol.identity}}));
  }

  {
    std::size_t violations = 0;
    double min_margin = HUGE_VAL;
    for (const Frame* f : {&raw, &onb, &parseval, &singular_onb}) {
      for (const Frame& g : {*f, rescale_upper_bound_one(*f), rescale_lower_bound_one(*f)}) {
        const SynthesisCertificate c = certify_synthesis(g, tol.synthesis, s);
        if (!c.passed) ++violations;
        min_margin = std::min(min_margin, c.aa_min);
      }
    }
    out.push_back(make_record("synthesis", std::nan(""), violations == 0,
                              {{"samples", 12}, {"violations", violations}, {"min_lambda_min", min_margin}},
                              {{"relative", tol.synthesis}}));
  }

  {
    Rng rng(derive_seed(s, vec_stream));
    const ComplexVector e = random_unit_vector(d, rng);
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
      const double gap = jensen_gap(ops.psd, e, p);
      out.push_back(make_record("jensen", p, gap >= -tol.jensen, {{"min_gap", gap}}, {{"absolute", tol.jensen}}));
    }
    const double defect = decomposition_identity_defect(ops.general, e);
    const double scale = std::max(std::norm(inner(ops.general * e, e)), 1e-300);
    out.push_back(make_record("decomposition-identity", std::nan(""), std::abs(defect) <= tol.identity * scale,
                              {{"max_rel_defect", std::abs(defect) / scale}}, {{"relative", tol.identity}}));
  }
  return out;
}

}  // namespace detail

inline CampaignReport run_verify_theorems(const CampaignConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.config = cfg;
  const auto per_trial =
      parallel_map(cfg.trials, cfg.threads, [&](std::size_t i) { return detail::verify_trial(cfg, i); });
  rep.records = detail::aggregate(per_trial);

  if (cfg.dim >= 2) {
    const ComplexMatrix t = shift_example(cfg.dim);
    const Frame e = standard_basis(cfg.dim);
    for (double p : cfg.p_grid) {
      const double diag = sum_diag(t, e, p).value;
      const double norm_p = schatten_power_sum(t, p);
      const double want = double(cfg.dim - 1);
      rep.records.push_back(detail::make_record(
          "shift-example", p, diag == 0.0 && std::abs(norm_p - want) <= cfg.tol.exact * want,
          {{"sum_diag", diag}, {"schatten_power_sum", norm_p}, {"expected", want}}, {{"relative", cfg.tol.exact}}));
    }
  }
  {
    const SynthesisCertificate c = certify_synthesis(mercedes_frame(), cfg.tol.synthesis, cfg.seed);
    rep.records.push_back(detail::make_record("synthesis-mercedes", std::nan(""), c.passed,
                                              {{"lower_bound", c.lower_bound}, {"upper_bound", c.upper_bound},
                                               {"synthesis_norm_sq", c.synthesis_norm_sq}},
                                              {{"relative", cfg.tol.synthesis}}));
  }
  rep.wall_time_seconds = detail::seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------

inline constexpr std::array<double, 4> rank_one_demo_exponents{0.5, 1.0, 1.5, 1.9};
inline constexpr std::size_t copies_default_terms = 24;

inline CampaignReport run_counterexamples(const CampaignConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.config = cfg;
  const Tolerances& tol = cfg.tol;
  CsvTable growth({"series", "N", "partial_sum", "increment_ratio", "relative_increment", "verdict"});
  auto growth_record = [&](const std::string& tag, double p, const GrowthSeries& g, Verdict expect) {
    detail::add_growth_rows(growth, tag + (std::isnan(p) ? "" : "_p" + format_double(p)), g);
    json m = detail::growth_json(g);
    m["expected"] = std::string(to_string(expect));
    rep.records.push_back(detail::make_record(tag, p, g.verdict == expect && g.nondecreasing(), std::move(m),
                                              {{"bounded_increment_fraction", bounded_increment_fraction}}));
  };

  // Rank-one series and the convergent comparison series.
  std::vector<double> last_increments;
  for (double p : rank_one_demo_exponents) {
    const GrowthSeries g = divergence_demo_sum_norms(p);
    growth_record("rank-one-growth", p, g, Verdict::divergent_trend);
    last_increments.push_back(g.relative_increments().back());
  }
  growth_record("comparison-series", 2.0, comparison_series(), Verdict::bounded_trend);
  rep.records.push_back(detail::make_record(
      "rank-one-growth-ordering", std::nan(""),
      std::is_sorted(last_increments.rbegin(), last_increments.rend()) &&
          std::adjacent_find(last_increments.begin(), last_increments.end()) == last_increments.end(),
      {{"last_relative_increments", last_increments}}, json::object()));
  {
    // Closed form against a matrix evaluation at a small truncation.
    const std::size_t d = std::max<std::size_t>(cfg.dim, 2);
    const ComplexVector h = log_weight_vector(d);
    const ComplexMatrix t = rank_one(h);
    const std::array<std::size_t, 2> grid{1, d};
    double worst = 0.0;
    for (double p : rank_one_demo_exponents) {
      const double closed = divergence_demo_sum_norms(p, grid).partial_sums.back();
      worst = std::max(worst, detail::rel(sum_norms(t, standard_basis(d), p).value, closed));
    }
    const double sv_defect = detail::rel(operator_norm(t), norm_sq(h));
    rep.records.push_back(detail::make_record("rank-one-closed-form", std::nan(""),
                                              worst <= tol.identity && sv_defect <= tol.identity,
                                              {{"max_rel_defect", worst}, {"singular_value_defect", sv_defect}},
                                              {{"relative", tol.identity}}));
  }

  // Frame of weighted copies, p = 3, ε = 3, λ_n = n^{−1/3}.
  {
    const double p = 3.0, eps = 3.0;
    const CopiesFrame pf = copies_frame(LambdaSpec::power, p, eps, copies_default_terms);
    double count_defect = 0.0;
    bool counts_exact = true;
    for (std::size_t n = 0; n < pf.lambda.size(); ++n) {
      const double nd = double(pf.counts[n]) * pf.delta[n] * pf.delta[n];
      count_defect = std::max(count_defect, std::abs(nd - 1.0));
      counts_exact = counts_exact && pf.counts[n] == (n + 1) * (n + 1);
    }
    rep.records.push_back(detail::make_record("copies-counts", p, counts_exact && count_defect <= tol.exact,
                                              {{"max_count_defect", count_defect}, {"counts_are_squares", counts_exact}},
                                              {{"absolute", tol.exact}}));
    const double direct = pf.direct_sum(), dual = pf.dual_sum();
    rep.records.push_back(detail::make_record("copies-dual-identity", p, detail::rel(direct, dual) <= tol.exact,
                                              {{"direct", direct}, {"dual", dual}, {"rel_defect", detail::rel(direct, dual)}},
                                              {{"relative", tol.exact}}));
    const SynthesisCertificate l1 = certify_synthesis(pf.frame, tol.synthesis, cfg.seed);
    rep.records.push_back(detail::make_record(
        "copies-frame-bounds", p,
        l1.passed && pf.frame.lower_bound() >= copies_count_lower && pf.frame.upper_bound() <= copies_count_upper,
        {{"lower_bound", pf.frame.lower_bound()}, {"upper_bound", pf.frame.upper_bound()}, {"frame_size", pf.frame.size()}},
        {{"synthesis", tol.synthesis}}));
    const ComplexMatrix t = pf.operator_t();
    const double frame_sum = sum_norms(t, pf.frame, p).value;
    const ComplexMatrix s = coefficient_operator(pf, t);
    double coeff_sum = 0.0;
    for (std::size_t k = 0; k < s.cols(); ++k) coeff_sum += std::pow(norm(s.column(k)), p);
    rep.records.push_back(detail::make_record(
        "coefficient-transfer", p, detail::rel(frame_sum, coeff_sum) <= tol.identity && detail::rel(frame_sum, direct) <= tol.identity,
        {{"frame_sum", frame_sum}, {"coefficient_sum", coeff_sum}, {"closed_form", direct}},
        {{"relative", tol.identity}}));
    const CopiesGrowth g = copies_growth(LambdaSpec::power, p, eps);
    growth_record("copies-lambda-p", p, g.lambda_p, Verdict::divergent_trend);
    growth_record("copies-frame-sum", p, g.frame_sum, Verdict::bounded_trend);
    growth_record("copies-lambda-p-eps", p + eps, g.lambda_p_eps, Verdict::bounded_trend);
  }

  // ONB plus weighted copies of h.
  {
    const std::size_t d = cfg.dim;
    Rng rng(derive_seed(cfg.seed, detail::op_stream));
    const ComplexMatrix t = random_operator(d, rng);
    const std::size_t copies = 16;
    const AugmentedBasis pf = augmented_basis(t, d, copies);
    const double lo = detail::rel(pf.frame.lower_bound(), pf.expected_lower);
    const double hi = detail::rel(pf.frame.upper_bound(), pf.expected_upper);
    double diag_defect = 0.0;
    const ComplexVector dv = detail::diagonal_values(t, pf.frame);
    for (std::size_t n = 1; n <= copies; ++n) {
      const double w = detail::log_weight(n);
      const complex want = pf.th * (w * w);
      diag_defect = std::max(diag_defect, std::abs(dv[d + n - 1] - want) / std::max(std::abs(want), 1e-300));
    }
    rep.records.push_back(detail::make_record(
        "augmented-frame", std::nan(""), lo <= tol.identity && hi <= tol.identity && diag_defect <= tol.exact,
        {{"lower_bound", pf.frame.lower_bound()}, {"upper_bound", pf.frame.upper_bound()},
         {"expected_upper", pf.expected_upper}, {"max_diag_defect", diag_defect}, {"abs_th", std::abs(pf.th)}},
        {{"bounds_relative", tol.identity}, {"diag_relative", tol.exact}}));
    growth_record("augmented-diag-growth", 0.5, augmented_diag_growth(pf.th, 0.5), Verdict::divergent_trend);
    const SynthesisCertificate l1 = certify_synthesis(pf.frame, tol.synthesis, cfg.seed);
    rep.records.push_back(detail::make_record("augmented-synthesis", std::nan(""), l1.passed,
                                              {{"synthesis_norm_sq", l1.synthesis_norm_sq}}, {{"relative", tol.synthesis}}));
  }

  // Reflector basis containing h_1.
  {
    const std::size_t d = std::max<std::size_t>(cfg.dim, 2);
    const double p = 1.0;
    const ReflectorExample ex = reflector_example(d, p);
    const double unitary_defect = relative_distance(ex.u.adjoint() * ex.u, ComplexMatrix::identity(d));
    const ComplexVector ue1 = ex.u.column(0);
    double e1_defect = 0.0;
    for (std::size_t k = 0; k < d; ++k) e1_defect = std::max(e1_defect, std::abs(ue1[k] - ex.h1[k]));
    const auto sv = singular_values(ex.t);
    double sv_defect = 0.0;
    for (std::size_t n = 0; n < d; ++n)
      sv_defect = std::max(sv_defect, std::abs(sv[n] - std::ldexp(1.0, -int(n + 1))) / std::ldexp(1.0, -int(n + 1)));
    const std::array<std::size_t, 2> grid{1, d};
    const double closed = reflector_example(d, p, grid).double_sums.partial_sums.back();
    const double direct = sum_double(ex.t, standard_basis(d), p).value;
    rep.records.push_back(detail::make_record(
        "reflector-structure", p,
        unitary_defect <= tol.exact && e1_defect <= tol.exact && sv_defect <= tol.identity &&
            detail::rel(closed, direct) <= tol.identity,
        {{"unitary_defect", unitary_defect}, {"e1_defect", e1_defect}, {"singular_value_defect", sv_defect},
         {"double_sum_direct", direct}, {"double_sum_closed_form", closed}},
        {{"exact", tol.exact}, {"relative", tol.identity}}));
    growth_record("reflector-double-sum", p, ex.double_sums, Verdict::divergent_trend);
    growth_record("reflector-norm-sum", p, ex.norm_sums, Verdict::bounded_trend);
  }

  // Shift operator.
  if (cfg.dim >= 2) {
    const ComplexMatrix t = shift_example(cfg.dim);
    for (double p : cfg.p_grid) {
      const double diag = sum_diag(t, standard_basis(cfg.dim), p).value;
      const double np = schatten_power_sum(t, p);
      rep.records.push_back(detail::make_record("shift-example", p,
                                                diag == 0.0 && std::abs(np - double(cfg.dim - 1)) <= tol.exact * double(cfg.dim),
                                                {{"sum_diag", diag}, {"schatten_power_sum", np}},
                                                {{"relative", tol.exact}}));
    }
  }

  // Transfer identities for A*TA, √T and T*T.
  {
    const auto per_trial = parallel_map(cfg.trials, cfg.threads, [&](std::size_t i) {
      const std::uint64_t s = detail::trial_seed(cfg.seed, i);
      const auto ops = detail::trial_operators(cfg.dim, s);
      const Frame f = detail::trial_frame(cfg.dim, s, 1e3);
      const TransferDefects a = transfer_defects(ops.psd, f, 1.5);
      const TransferDefects b = transfer_defects(ops.general, f, 0.5);
      const double scale = std::max(1.0, max_abs(ops.psd));
      std::vector<CheckRecord> out;
      out.push_back(detail::make_record("transfer-conjugation", std::nan(""),
                                        std::max(a.conjugation, b.conjugation) <= tol.identity * scale * f.upper_bound(),
                                        {{"max_defect", std::max(a.conjugation, b.conjugation)}}, {{"relative", tol.identity}}));
      out.push_back(detail::make_record("transfer-sqrt", std::nan(""), a.sqrt <= tol.identity * scale,
                                        {{"max_defect", a.sqrt}}, {{"relative", tol.identity}}));
      out.push_back(detail::make_record("transfer-square", std::nan(""), std::max(a.square, b.square) <= tol.identity,
                                        {{"max_rel_defect", std::max(a.square, b.square)}}, {{"relative", tol.identity}}));
      return out;
    });
    for (auto& r : detail::aggregate(per_trial)) rep.records.push_back(std::move(r));
  }

  rep.tables.emplace("growth.csv", std::move(growth));
  rep.wall_time_seconds = detail::seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t bergman_default_radial = 64;

inline CampaignReport run_bergman(const CampaignConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.config = cfg;
  const Tolerances& tol = cfg.tol;

  // Diagonal operator on degree 4: quadrature against the per-mode closed form.
  {
    const std::size_t d = 4;
    const ComplexMatrix t = ComplexMatrix::diagonal({1.0, 0.5, 0.25, 0.125});
    const DiskQuadrature q = disk_quadrature(bergman_default_radial, default_angular_points(d), cfg.rmax);
    const HsIdentityReport r = hs_identity_check(t, q, d, tol.identity);
    rep.records.push_back(detail::make_record(
        "bergman-hs-diagonal", 2.0, r.passed && r.closed_form_defect <= 1e-3 && r.pointwise_defect <= tol.exact,
        {{"dlambda_integral", r.dlambda_integral}, {"dA_integral", r.dA_integral}, {"closed_form", r.closed_form},
         {"closed_form_defect", r.closed_form_defect}, {"pointwise_defect", r.pointwise_defect},
         {"hs_norm_sq", r.hs_norm_sq}, {"truncation_gap", r.truncation_gap}},
        {{"closed_form_relative", 1e-3}, {"pointwise_relative", tol.exact}, {"identity_relative", tol.identity}}));
  }
  // d = 1: constant mode, integral t² rmax².
  {
    const double tv = 1.5;
    const ComplexMatrix t = ComplexMatrix::diagonal({tv});
    const DiskQuadrature q = disk_quadrature(bergman_default_radial, default_angular_points(1), cfg.rmax);
    const HsIdentityReport r = hs_identity_check(t, q, 1, tol.identity);
    const double want = tv * tv * cfg.rmax * cfg.rmax;
    rep.records.push_back(detail::make_record("bergman-hs-constant-mode", 2.0,
                                              r.passed && detail::rel(r.dA_integral, want) <= tol.identity,
                                              {{"integral", r.dA_integral}, {"expected", want}},
                                              {{"relative", tol.identity}}));
  }
  // Refinement table for a random operator.
  {
    const std::size_t d = std::min<std::size_t>(cfg.dim, 16);
    Rng rng(derive_seed(cfg.seed, detail::op_stream));
    const ComplexMatrix t = random_operator(d, rng);
    CsvTable refine({"rmax", "n_radial", "dlambda_integral", "closed_form", "hs_norm_sq"});
    bool ok = true;
    double worst = 0.0;
    std::vector<double> radii{0.9, 0.95, 0.99};
    if (std::find(radii.begin(), radii.end(), cfg.rmax) == radii.end()) radii.push_back(cfg.rmax);
    std::sort(radii.begin(), radii.end());
    for (double r : radii)
      for (std::size_t nr : {16, 32, 64}) {
        const HsIdentityReport h = hs_identity_check(t, disk_quadrature(nr, default_angular_points(d), r), d, tol.identity);
        ok = ok && h.passed;
        worst = std::max(worst, h.identity_defect);
        refine.row({format_double(r), std::to_string(nr), format_double(h.dlambda_integral), format_double(h.closed_form),
                    format_double(h.hs_norm_sq)});
      }
    rep.records.push_back(detail::make_record("bergman-hs-refinement", 2.0, ok, {{"max_identity_defect", worst}},
                                              {{"relative", tol.identity}}));
    rep.tables.emplace("refinement.csv", std::move(refine));
  }
  // Subharmonicity of ‖T K_w‖^p.
  {
    const std::size_t n = std::min<std::size_t>(cfg.trials, 20);
    const std::size_t d = std::min<std::size_t>(cfg.dim, 8);
    const auto per_trial = parallel_map(n, cfg.threads, [&](std::size_t i) {
      Rng rng(derive_seed(detail::trial_seed(cfg.seed, i), detail::op_stream));
      const ComplexMatrix t = random_operator(d, rng);
      std::vector<CheckRecord> out;
      for (double p : {0.5, 1.0, 2.0, 3.0}) {
        const SubharmonicityReport r = subharmonicity_check(t, p, 0.01, 0.9, d);
        out.push_back(detail::make_record("bergman-subharmonic", p, r.passed,
                                          {{"min_laplacian", r.min_laplacian},
                                           {"max_f", r.max_f},
                                           {"min_tolerance_margin", r.min_laplacian + r.tolerance}},
                                          {{"tol_subh_factor", 1e-6}}));
      }
      return out;
    });
    for (auto& r : detail::aggregate(per_trial)) rep.records.push_back(std::move(r));
    const SubharmonicityReport id = subharmonicity_check(ComplexMatrix::identity(d), 2.0, 0.01, 0.9, d);
    rep.records.push_back(detail::make_record("bergman-subharmonic-identity", 2.0, id.passed,
                                              {{"min_laplacian", id.min_laplacian}, {"tolerance", id.tolerance}},
                                              {{"tol_subh_factor", 1e-6}}));
  }
  // Lattices and sampling frames.
  {
    const SamplingLattice lat = r_lattice(0.5, 0.9);
    rep.records.push_back(detail::make_record("lattice-separation", std::nan(""), lat.min_pairwise >= lat.separation,
                                              {{"points", lat.points.size()}, {"min_pairwise", lat.min_pairwise},
                                               {"separation", lat.separation}},
                                              json::object()));
    CsvTable pts({"x", "y"});
    for (const complex w : lat.points) pts.row({format_double(w.real()), format_double(w.imag())});
    rep.tables.emplace("lattice.csv", std::move(pts));

    const std::size_t d = 8;
    CsvTable frames({"separation", "points", "lower_bound", "upper_bound", "condition", "lattice_constant_p1"});
    Rng rng(derive_seed(cfg.seed, detail::psd_stream));
    const ComplexMatrix t = random_operator(d, rng);
    const DiskQuadrature q = disk_quadrature(bergman_default_radial, default_angular_points(d), 0.95);
    bool ok = true;
    std::vector<double> conds;
    for (double sep : {0.3, 0.4, 0.5}) {
      const SamplingLattice l = r_lattice(sep, 0.95);
      const SamplingFrameReport sf = sampling_frame(l, d);
      const LatticeChainReport ch = lattice_chain(t, 1.0, l, q, d);
      ok = ok && sf.lower_bound > 0.0 && std::isfinite(ch.constant) && l.min_pairwise >= sep;
      conds.push_back(sf.condition);
      frames.row({format_double(sep), std::to_string(l.points.size()), format_double(sf.lower_bound),
                  format_double(sf.upper_bound), format_double(sf.condition), format_double(ch.constant)});
    }
    rep.records.push_back(detail::make_record("sampling-frames", std::nan(""), ok,
                                              {{"conditions", conds},
                                               {"condition_trend_nondecreasing", std::is_sorted(conds.begin(), conds.end())}},
                                              json::object()));
    rep.tables.emplace("sampling_frames.csv", std::move(frames));

    CsvTable quad({"x", "y", "weight_dA"});
    const DiskQuadrature qq = disk_quadrature(16, 32, cfg.rmax);
    for (std::size_t k = 0; k < qq.size(); ++k)
      quad.row({format_double(qq.nodes[k].real()), format_double(qq.nodes[k].imag()), format_double(qq.weights_dA[k])});
    rep.tables.emplace("quadrature.csv", std::move(quad));
  }
  rep.wall_time_seconds = detail::seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------

// ‖T‖_p from the singular values, with the extremal frame sums over a seeded
// ensemble. For p >= 2 the ensemble uses frames with C2 = 1 and must stay at
// or below ‖T‖_p^p; for p <= 2 Parseval frames must stay at or above it.
inline CampaignReport run_norm_estimate(const ComplexMatrix& t, const CampaignConfig& cfg) {
  cfg.validate();
  if (!t.is_square()) throw dimension_error("norm-estimate: operator must be square, got " + t.shape());
  const auto t0 = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.config = cfg;
  const double p = cfg.p;
  const double exact_pp = schatten_power_sum(t, p);
  const double exact = std::pow(exact_pp, 1.0 / p);
  const double singular = detail::witness_sum(detail::column_norms(t * svd(t).right_vectors), p, t.rows());
  const double scale = std::max(exact_pp, 1e-300);
  rep.records.push_back(detail::make_record("norm-exact", p, std::abs(singular - exact_pp) <= cfg.tol.certificate * scale,
                                            {{"schatten_norm", exact}, {"schatten_power_sum", exact_pp},
                                             {"singular_basis_sum", singular}},
                                            {{"relative", cfg.tol.certificate}}));
  if (cfg.strategy == "frame_ensemble") {
    const std::size_t d = t.rows();
    struct Sample {
      double upper = std::nan("");
      double lower = std::nan("");
    };
    const auto samples = parallel_map(cfg.trials, cfg.threads, [&](std::size_t i) {
      const std::uint64_t s = detail::trial_seed(cfg.seed, i);
      const Frame raw = detail::trial_frame(d, s, 1e3);
      Sample out;
      if (p >= 2.0) out.upper = sum_norms(t, rescale_upper_bound_one(raw), p).value;
      if (p <= 2.0) out.lower = sum_norms(t, canonical_parseval(raw), p).value;
      return out;
    });
    double max_upper = -HUGE_VAL, min_lower = HUGE_VAL;
    for (const auto& s : samples) {
      if (!std::isnan(s.upper)) max_upper = std::max(max_upper, s.upper);
      if (!std::isnan(s.lower)) min_lower = std::min(min_lower, s.lower);
    }
    json m{{"schatten_power_sum", exact_pp}};
    bool ok = true;
    if (p >= 2.0) {
      m["ensemble_max"] = max_upper;
      m["gap_upper"] = exact_pp - max_upper;  // >= 0 expected
      ok = ok && max_upper <= exact_pp + cfg.tol.certificate * scale;
    }
    if (p <= 2.0) {
      m["ensemble_min"] = min_lower;
      m["gap_lower"] = min_lower - exact_pp;  // >= 0 expected
      ok = ok && min_lower >= exact_pp - cfg.tol.certificate * scale;
    }
    rep.records.push_back(detail::make_record("norm-ensemble", p, ok, std::move(m), {{"relative", cfg.tol.certificate}}));
  }
  rep.wall_time_seconds = detail::seconds_since(t0);
  return rep;
}

}  // namespace framelab
