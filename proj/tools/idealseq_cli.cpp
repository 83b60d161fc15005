#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "idealseq/harness.hpp"

using namespace idealseq;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string sequence;
  std::string ideal;
  std::string out;
  std::string format;
  std::int64_t n = -1;
  std::int64_t trials = -1;
  std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "config file (structured key-value document)");
  cmd->add_option("--sequence", o.sequence, "zoo entry name or file:<path>");
  cmd->add_option("--ideal", o.ideal,
                  "fin | I<alpha> | density:<alpha> | eu:<w> | summable:<w> | gdi:natural");
  cmd->add_option("--n", o.n, "prefix length");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "tabular | structured")
      ->check(CLI::IsMember({"tabular", "structured"}));
}

ExperimentConfig build_config(const CommonOpts& o) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = ExperimentConfig::load(o.config_path);
  if (!o.sequence.empty()) c.sequence_name = o.sequence;
  if (!o.ideal.empty()) c.ideal_name = o.ideal;
  if (o.n >= 0) {
    c.n = o.n;
    c.n_explicit = true;
  }
  if (o.trials >= 0) c.trials = o.trials;
  if (o.seed >= 0) c.seed = static_cast<std::uint64_t>(o.seed);
  if (!o.out.empty()) c.out_path = o.out;
  if (!o.format.empty())
    c.format = o.format == "tabular" ? ExperimentConfig::Format::Tabular
                                     : ExperimentConfig::Format::Structured;
  c.apply_defaults();
  return c;
}

void emit(const ExperimentConfig& c, const std::string& structured,
          const std::string& tabular) {
  if (c.format == ExperimentConfig::Format::Tabular) {
    if (c.out_path.empty()) {
      std::cout << tabular;
    } else {
      write_text_file(c.out_path, tabular);
      write_text_file(c.out_path + ".summary.json", structured);
      std::cout << "wrote " << c.out_path << " and " << c.out_path << ".summary.json\n";
    }
  } else {
    if (c.out_path.empty()) {
      std::cout << structured;
    } else {
      write_text_file(c.out_path, structured);
      std::cout << "wrote " << c.out_path << "\n";
    }
  }
}

std::string limitset_reports_tabular(const LimitSetReport& l, const LimitSetReport& g,
                                     const LimitSetReport& lam) {
  // shared header across the three kinds
  std::string out = report_to_tabular(l);
  std::string gt = report_to_tabular(g);
  std::string lt = report_to_tabular(lam);
  out += gt.substr(gt.find('\n') + 1);
  out += lt.substr(lt.find('\n') + 1);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ideal-convergence limit set analysis"};
  app.require_subcommand(1);

  CommonOpts density_o, member_o, limitsets_o, mc_o, dich_o, fin_o, zoo_o;
  std::string set_name = "squares";
  std::string alphas_text = "0,0.5,1,2";
  std::string member_set = "squares";

  auto* density_cmd = app.add_subcommand("density", "alpha-weighted density statistics for a set");
  add_common(density_cmd, density_o);
  density_cmd->add_option("--set", set_name, "named index set");
  density_cmd->add_option("--alphas", alphas_text, "comma-separated alpha values");

  auto* member_cmd = app.add_subcommand("member", "membership verdict for (ideal, set)");
  add_common(member_cmd, member_o);
  member_cmd->add_option("--set", member_set, "named index set");

  auto* limitsets_cmd =
      app.add_subcommand("limitsets", "estimate L / Gamma / Lambda for a sequence");
  add_common(limitsets_cmd, limitsets_o);

  auto* mc_cmd = app.add_subcommand("montecarlo", "measure-side preservation experiment");
  add_common(mc_cmd, mc_o);

  auto* dich_cmd = app.add_subcommand("dichotomy", "category-side dichotomy experiment");
  add_common(dich_cmd, dich_o);

  auto* fin_cmd = app.add_subcommand("corollary-fin", "ordinary limit point preservation");
  add_common(fin_cmd, fin_o);

  auto* oracle_cmd = app.add_subcommand("oracle-suite", "run the derived-value oracle batteries");
  std::int64_t oracle_seed = 20260801;
  oracle_cmd->add_option("--seed", oracle_seed, "oracle battery seed");

  auto* zoo_cmd = app.add_subcommand("zoo", "export the sequence catalogue");
  add_common(zoo_cmd, zoo_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (density_cmd->parsed()) {
      auto c = build_config(density_o);
      auto set = IndexSet::named(set_name, c.n);
      std::vector<double> alphas;
      {
        std::stringstream ss(alphas_text);
        std::string cell;
        while (std::getline(ss, cell, ',')) alphas.push_back(std::stod(cell));
      }
      auto rows = alpha_equivalence_probe(set, alphas, c.n, c.thresholds);
      SNode doc = SNode::object();
      doc.set("set", set_name);
      doc.set("n", c.n);
      SNode arr = SNode::array();
      std::string tab = csv_row({"alpha", "statistic", "verdict"});
      for (const auto& r : rows) {
        SNode rn = SNode::object();
        rn.set("alpha", r.alpha);
        rn.set("statistic", r.statistic);
        rn.set("verdict", to_string(r.verdict));
        arr.push(std::move(rn));
        tab += csv_row({format_double(r.alpha), format_double(r.statistic), to_string(r.verdict)});
      }
      doc.set("rows", std::move(arr));
      emit(c, doc.dump(), tab);
    } else if (member_cmd->parsed()) {
      auto c = build_config(member_o);
      auto set = IndexSet::named(member_set, c.n);
      auto ideal = c.ideal();
      for (const auto& w : ideal.validate(c.n)) std::cerr << "warning: " << w << "\n";
      auto v = membership(ideal, set, c.n, c.thresholds);
      SNode doc = SNode::object();
      doc.set("set", member_set);
      doc.set("ideal", c.ideal_name);
      doc.set("n", c.n);
      doc.set("verdict", to_string(v.verdict));
      doc.set("statistic", v.statistic);
      doc.set("window_lo", v.window_lo);
      doc.set("window_hi", v.window_hi);
      doc.set("threshold", v.threshold);
      std::string tab = csv_row({"set", "ideal", "n", "verdict", "statistic", "threshold"});
      tab += csv_row({member_set, c.ideal_name, std::to_string(c.n), to_string(v.verdict),
                      format_double(v.statistic), format_double(v.threshold)});
      emit(c, doc.dump(), tab);
    } else if (limitsets_cmd->parsed()) {
      auto c = build_config(limitsets_o);
      c.validate();
      auto x = generate(c.sequence(), c.n);
      auto ideal = c.ideal();
      auto l = estimate_L(x, c.schedule, c.min_hits);
      auto g = estimate_Gamma(x, ideal, c.schedule, c.thresholds);
      auto lam = estimate_lambda_for_ideal(x, ideal, c.schedule, c.qgrid, c.thresholds,
                                           c.min_hits);
      SNode doc = SNode::object();
      doc.set("experiment", "limitsets");
      doc.set("config", config_echo(c));
      doc.set("L", report_to_structured(l));
      doc.set("Gamma", report_to_structured(g));
      doc.set("Lambda", report_to_structured(lam));
      emit(c, doc.dump(), limitset_reports_tabular(l, g, lam));
    } else if (mc_cmd->parsed()) {
      auto c = build_config(mc_o);
      auto s = run_montecarlo(c);
      emit(c, summary_to_structured(c, s).dump(), summary_to_tabular(s));
      std::fprintf(stderr, "gamma preserved: %s  lambda preserved: %s  voided: %lld\n",
                   format_double(s.fraction_gamma_preserved).c_str(),
                   format_double(s.fraction_lambda_preserved).c_str(),
                   static_cast<long long>(s.voided));
    } else if (dich_cmd->parsed()) {
      auto c = build_config(dich_o);
      auto rep = run_dichotomy(c);
      emit(c, dichotomy_to_structured(c, rep).dump(), summary_to_tabular(rep.random_side));
    } else if (fin_cmd->parsed()) {
      auto c = build_config(fin_o);
      c.ideal_name = "fin";
      auto rep = run_corollary_fin(c);
      std::string tab = csv_row({"trial", "trial_seed", "subseq_len", "voided", "l_equal",
                                 "l_mismatch"});
      for (const auto& r : rep.records)
        tab += csv_row({std::to_string(r.trial), std::to_string(r.trial_seed),
                        std::to_string(r.subseq_len), r.voided ? "1" : "0",
                        r.gamma_equal ? "1" : "0", std::to_string(r.gamma_mismatch)});
      emit(c, corollary_to_structured(c, rep).dump(), tab);
    } else if (oracle_cmd->parsed()) {
      auto res = run_oracle_suite(static_cast<std::uint64_t>(oracle_seed));
      for (const auto& r : res.results)
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << (r.detail.empty() ? "" : " - " + r.detail) << "\n";
      return res.all_pass() ? 0 : 1;
    } else if (zoo_cmd->parsed()) {
      auto c = build_config(zoo_o);
      emit(c, zoo_catalogue_to_structured().dump(), "");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
