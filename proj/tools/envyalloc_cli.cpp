#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "envyalloc/envyalloc.hpp"

using namespace envyalloc;

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

SolveResult run_method(const Instance& inst, Objective obj, const std::string& method, const OracleOptions& guard) {
  if (method == "auto") return solve(inst, obj);
  if (method == "oracle") return brute_force(inst, obj, guard);
  if (method == "fpt") return solve_fpt_subsets(inst, obj);
  if (method == "ilp") return solve_ilp(inst, obj);
  if (method == "square") return solve_square(inst, obj);
  if (method == "extremal") return solve_extremal(inst, obj);
  if (method == "single_minded") return solve_single_minded(inst, obj);
  if (method == "degree2") {
    if (obj != Objective::num_envious) throw std::invalid_argument("degree2 solves oha only");
    return solve_house_degree_two_oha(inst);
  }
  throw std::invalid_argument("unknown method '" + method + "'");
}

ExperimentConfig parse_config(const std::string& s) {
  ExperimentConfig c;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(s);
  if (!(in >> c.n >> sep1 >> c.m >> sep2 >> c.n_star) || sep1 != ',' || sep2 != ',' || !in.eof())
    throw std::invalid_argument("config must look like n,m,n_star: '" + s + "'");
  return c;
}

ProfileKind parse_kind(const std::string& s) {
  if (s == "binary") return ProfileKind::binary;
  if (s == "strict") return ProfileKind::strict;
  if (s == "weak") return ProfileKind::weak;
  throw std::invalid_argument("unknown profile kind '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"House allocation with minimum envy"};
  app.require_subcommand(1);

  GenSpec gen_spec;
  std::string gen_kind = "binary";
  std::uint64_t seed = 1;
  std::string out;
  auto* gen = app.add_subcommand("gen", "Generate a random typed instance");
  gen->add_option("--n", gen_spec.n, "Agents")->required();
  gen->add_option("--m", gen_spec.m, "Houses")->required();
  gen->add_option("--nstar,--n-star", gen_spec.n_star, "Agent types")->required();
  gen->add_option("--kind", gen_kind, "binary, strict or weak");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out", out, "Output file");

  std::string file, objective = "oha", method = "auto";
  bool as_json = false;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("file", file, "Instance JSON")->required();
  solve_cmd->add_option("--objective", objective, "oha, eha or uha");
  solve_cmd->add_option("--method", method, "auto, oracle, fpt, ilp, square, extremal, single_minded, degree2");
  solve_cmd->add_flag("--json", as_json, "JSON report");
  solve_cmd->add_option("--out", out, "Output file");
  OracleOptions guard;
  solve_cmd->add_option("--oracle-max-n", guard.max_n, "Largest n the oracle accepts");
  solve_cmd->add_option("--oracle-max-m", guard.max_m, "Largest m the oracle accepts");

  auto* ef = app.add_subcommand("check-ef", "Decide whether an envy-free allocation exists");
  ef->add_option("file", file, "Instance JSON")->required();

  std::string trace_out;
  auto* kern = app.add_subcommand("kernelize", "Reduce an instance");
  kern->add_option("file", file, "Instance JSON")->required();
  kern->add_option("--out", out, "Reduced instance file");
  kern->add_option("--trace", trace_out, "Trace file");

  auto* pof_cmd = app.add_subcommand("pof", "Price of fairness per objective");
  pof_cmd->add_option("file", file, "Instance JSON")->required();
  pof_cmd->add_option("--oracle-max-n", guard.max_n, "Largest n the oracle accepts");
  pof_cmd->add_option("--oracle-max-m", guard.max_m, "Largest m the oracle accepts");

  std::string model = "p1";
  auto* lp = app.add_subcommand("export-lp", "Write the typed model as an LP file");
  lp->add_option("file", file, "Instance JSON")->required();
  lp->add_option("--model", model, "p1, p2 or uha");
  lp->add_option("--out", out, "Output file");

  std::vector<std::string> configs;
  ExperimentOptions exp_opt;
  bool no_time = false;
  auto* exp = app.add_subcommand("experiment", "Run a grid of random trials and write CSV");
  exp->add_option("--config", configs, "n,m,n_star (repeatable)");
  exp->add_option("--trials", exp_opt.trials, "Trials per configuration");
  exp->add_option("--seed", exp_opt.base_seed, "Base seed");
  exp->add_option("--threads", exp_opt.threads, "Worker threads");
  exp->add_flag("--no-time", no_time, "Write 0 in the time_ms column");
  exp->add_option("--out", out, "CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      gen_spec.kind = parse_kind(gen_kind);
      emit(instance_to_json(generate_instance(gen_spec, seed)).dump() + "\n", out);
    } else if (*solve_cmd) {
      const Instance inst = load_instance(file);
      const Objective obj = parse_objective(objective);
      const SolveResult r = run_method(inst, obj, method, guard);
      const EnvyReport rep = envy_report(inst, r.allocation);
      std::ostringstream text;
      if (as_json) {
        json j;
        j["objective"] = std::string(to_string(obj));
        j["method"] = std::string(to_string(r.method));
        j["value"] = r.value;
        j["allocation"] = r.allocation.houses();
        j["report"] = report_to_json(rep);
        text << j.dump(2) << '\n';
      } else {
        text << "method: " << to_string(r.method) << '\n' << "objective: " << to_string(obj) << '\n';
        text << "value: " << r.value << '\n' << "allocation:";
        for (auto h : r.allocation.houses()) text << ' ' << h;
        text << '\n'
             << "num_envious: " << rep.num_envious << '\n'
             << "max_envy: " << rep.max_envy << '\n'
             << "total_envy: " << rep.total_envy << '\n';
        if (rep.welfare) text << "welfare: " << *rep.welfare << '\n';
      }
      emit(text.str(), out);
    } else if (*ef) {
      const Instance inst = load_instance(file);
      if (const auto a = envy_free_allocation(inst)) {
        std::cout << "envy-free: yes\nallocation:";
        for (auto h : a->houses()) std::cout << ' ' << h;
        std::cout << '\n';
      } else {
        std::cout << "envy-free: no\n";
      }
    } else if (*kern) {
      const Instance inst = load_instance(file);
      const KernelResult k = kernelize(inst);
      if (!trace_out.empty()) write_file(trace_out, trace_to_json(k.trace).dump(2) + "\n");
      if (k.trivial_yes) std::cerr << "trivial yes-instance\n";
      std::cerr << "reduced: n=" << k.reduced.n() << " m=" << k.reduced.m() << '\n';
      emit(instance_to_json(k.reduced).dump() + "\n", out);
    } else if (*pof_cmd) {
      const Instance inst = load_instance(file);
      const PofReport rep = pof(inst, guard);
      for (auto o : all_objectives) {
        const auto& e = rep[o];
        std::cout << to_string(o) << ": optimum=" << e.optimum << " max_welfare=" << e.max_welfare
                  << " fair_welfare=" << e.best_fair_welfare << " pof=";
        if (e.infinite)
          std::cout << "inf";
        else
          std::cout << e.ratio;
        std::cout << '\n';
      }
    } else if (*lp) {
      const TypeProfile p = type_profile(load_instance(file));
      IlpModel mdl;
      if (model == "p1")
        mdl = build_p1(p);
      else if (model == "p2")
        mdl = build_p2(p);
      else if (model == "uha")
        mdl = build_uha_quadratic(p);
      else
        throw std::invalid_argument("unknown model '" + model + "'");
      emit(export_lp(mdl), out);
    } else if (*exp) {
      std::vector<ExperimentConfig> grid;
      for (const auto& c : configs) grid.push_back(parse_config(c));
      emit(to_csv(run_experiment(grid, exp_opt), !no_time), out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
