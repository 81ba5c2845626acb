#include "teltrace/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "teltrace/equilibrium.hpp"
#include "teltrace/errors.hpp"
#include "teltrace/normalform.hpp"
#include "teltrace/parser.hpp"
#include "teltrace/printer.hpp"
#include "teltrace/verify.hpp"

namespace teltrace {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoModel = 20;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;
constexpr int kExitBudget = 75;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string file;
  std::string format = "human";
  bool core = false;
  std::string trace_file, here_file;
  int at = 0;
  int lambda = -1, upto = -1;
  bool tht = false;
  std::string alphabet;
  bool bc = false;
  bool do_solve = false;
  int from = 0, to = 5;
  std::string mode = "first";
  int ground = -1;
  std::uint64_t seed = 1;
  int samples = 200;
  int budget = -1;
  int verify_to = 3;
};

Budget effective_budget(const Options& o) {
  Budget b = Budget::from_env();
  if (o.budget > 0) b.bits = o.budget;
  return b;
}

bool kv(const Options& o) { return o.format == "kv"; }

Theory load_theory(FormulaStore& store, const Options& o) {
  Theory th = parse_theory(store, slurp(o.file));
  if (!o.alphabet.empty()) {
    std::vector<AtomId> atoms = th.alphabet.atoms;
    std::stringstream ss(o.alphabet);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      atoms.push_back(store.atom(name));
    }
    th.alphabet = Alphabet::sorted(store, std::move(atoms));
  }
  return th;
}

std::string trace_line(const FormulaStore& store, const Alphabet& al, const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    if (i) out += ' ';
    out += print_state(store, al, t.states[i]);
  }
  return out;
}

int cmd_parse(const Options& o, std::ostream& out) {
  FormulaStore store;
  Theory th = parse_theory(store, slurp(o.file));
  std::string listing = normalized_listing(store, th, o.core);
  if (!kv(o)) {
    out << listing;
    return kExitOk;
  }
  out << "command=parse\n";
  std::istringstream ss(listing);
  std::string line;
  int i = 0;
  while (std::getline(ss, line)) out << "line." << i++ << "=" << line << "\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  FormulaStore store;
  Theory th = load_theory(store, o);
  Trace there = parse_trace(store, th.alphabet, slurp(o.trace_file));
  HTTrace m = o.here_file.empty()
                  ? total_trace(there)
                  : make_ht(parse_trace(store, th.alphabet, slurp(o.here_file)), there);
  if (kv(o)) out << "command=eval\nat=" << o.at << "\n";
  for (std::size_t i = 0; i < th.formulas.size(); ++i) {
    bool v = m.total() ? sat_ltl(store, th.alphabet, m.there, o.at, th.formulas[i])
                       : sat(store, th.alphabet, m, o.at, th.formulas[i]);
    std::string text = print_formula(store, th.formulas[i]);
    if (kv(o)) {
      out << "formula." << i << ".text=" << text << "\n";
      out << "formula." << i << ".verdict=" << (v ? "satisfied" : "falsified") << "\n";
    } else {
      out << (v ? "satisfied: " : "falsified: ") << text << "\n";
    }
  }
  return kExitOk;
}

int cmd_models(const Options& o, std::ostream& out) {
  FormulaStore store;
  Theory th = load_theory(store, o);
  Budget budget = effective_budget(o);
  int lo = o.lambda >= 0 ? o.lambda : 0;
  int hi = o.lambda >= 0 ? o.lambda : o.upto;
  if (kv(o)) out << "command=models\n";
  std::size_t total = 0;
  for (int lambda = lo; lambda <= hi; ++lambda) {
    if (o.tht) {
      auto models = tht_models(store, th, lambda, budget);
      total += models.size();
      if (kv(o)) {
        out << "lambda." << lambda << ".count=" << models.size() << "\n";
        for (std::size_t i = 0; i < models.size(); ++i) {
          out << "lambda." << lambda << ".model." << i
              << ".here=" << trace_line(store, th.alphabet, models[i].here) << "\n";
          out << "lambda." << lambda << ".model." << i
              << ".there=" << trace_line(store, th.alphabet, models[i].there) << "\n";
        }
      } else {
        out << "lambda " << lambda << ": " << models.size()
            << (models.size() == 1 ? " HT-model" : " HT-models") << "\n";
        for (const auto& m : models)
          out << "  here: " << trace_line(store, th.alphabet, m.here)
              << "   there: " << trace_line(store, th.alphabet, m.there) << "\n";
      }
    } else {
      auto models = tel_models(store, th, lambda, budget);
      total += models.size();
      if (kv(o)) {
        out << "lambda." << lambda << ".count=" << models.size() << "\n";
        for (std::size_t i = 0; i < models.size(); ++i)
          out << "lambda." << lambda << ".model." << i << "="
              << trace_line(store, th.alphabet, models[i]) << "\n";
      } else {
        out << "lambda " << lambda << ": " << models.size()
            << (models.size() == 1 ? " model" : " models") << "\n";
        for (const auto& m : models)
          out << "  " << trace_line(store, th.alphabet, m) << "\n";
      }
    }
  }
  if (total == 0 && !kv(o)) out << "no models\n";
  return total == 0 ? kExitNoModel : kExitOk;
}

int cmd_compile(const Options& o, std::ostream& out, std::ostream& err) {
  FormulaStore store;
  TemporalProgram p;
  if (o.bc) {
    p = bc_program(store, parse_bc_laws(store, slurp(o.file)));
  } else {
    Theory th = load_theory(store, o);
    p = to_normal_form(store, th);
  }
  for (const std::string& note : lint_program(store, p)) err << "note: " << note << "\n";
  if (!p.aux_alphabet.atoms.empty()) {
    out << "% aux:";
    for (AtomId a : p.aux_alphabet.atoms) out << ' ' << store.atom_name(a);
    out << "\n";
  }
  out << print_program(store, p);
  return kExitOk;
}

void print_ground_models(const FormulaStore& store, const LogicProgram& ground,
                         const Alphabet& alphabet, int lambda,
                         const std::vector<std::uint64_t>& models, const Options& o,
                         std::ostream& out) {
  if (kv(o)) {
    out << "model.count=" << models.size() << "\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
      out << "model." << i << ".atoms=" << render_model(store, ground, models[i]) << "\n";
      out << "model." << i << ".trace="
          << trace_line(store, alphabet, decode_model(ground, alphabet, models[i], lambda))
          << "\n";
    }
  } else {
    if (models.empty()) out << "no models\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
      out << "model " << i + 1 << ": " << render_model(store, ground, models[i]) << "\n";
      out << "trace " << i + 1 << ": "
          << trace_line(store, alphabet, decode_model(ground, alphabet, models[i], lambda))
          << "\n";
    }
  }
}

int cmd_ground(const Options& o, std::ostream& out) {
  FormulaStore store;
  Theory th = load_theory(store, o);
  TemporalProgram p = to_normal_form(store, th);
  LogicProgram ground = tau_bounded(p, o.lambda);
  if (!o.do_solve) {
    std::vector<std::string> header{"teltrace ground program"};
    std::string alpha = "alphabet:";
    for (AtomId a : p.alphabet.atoms) alpha += ' ' + store.atom_name(a);
    header.push_back(alpha);
    if (!p.aux_alphabet.atoms.empty()) {
      std::string aux = "aux:";
      for (AtomId a : p.aux_alphabet.atoms) aux += ' ' + store.atom_name(a);
      header.push_back(aux);
    }
    header.push_back("lambda: " + std::to_string(o.lambda));
    out << emit_text(store, ground, header);
    return kExitOk;
  }
  auto models = stable_models(ground, effective_budget(o));
  if (kv(o)) out << "command=ground\nlambda=" << o.lambda << "\n";
  print_ground_models(store, ground, p.alphabet, o.lambda, models, o, out);
  return models.empty() ? kExitNoModel : kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  FormulaStore store;
  Theory th = load_theory(store, o);
  Budget budget = effective_budget(o);
  if (o.ground >= 0) {
    TemporalProgram p = to_normal_form(store, th);
    LogicProgram ground = tau_bounded(p, o.ground);
    auto models = stable_models(ground, budget);
    if (kv(o)) out << "command=solve\nroute=bounded\nlambda=" << o.ground << "\n";
    print_ground_models(store, ground, p.alphabet, o.ground, models, o, out);
    return models.empty() ? kExitNoModel : kExitOk;
  }
  TemporalProgram p = reduce_theory(store, th);
  SolveMode mode = o.mode == "first"          ? SolveMode::First
                   : o.mode == "all-at-first" ? SolveMode::AllAtFirst
                                              : SolveMode::Exhaustive;
  auto reports = incremental_solve(store, p, o.from, o.to, mode, budget);
  bool any = false;
  if (kv(o)) out << "command=solve\nroute=incremental\n";
  for (const auto& rep : reports) {
    any = any || rep.sat;
    if (kv(o)) {
      out << "horizon." << rep.horizon << ".models=" << rep.models.size() << "\n";
      out << "horizon." << rep.horizon << ".atoms=" << rep.stats.n_atoms << "\n";
      out << "horizon." << rep.horizon << ".rules=" << rep.stats.n_rules << "\n";
      for (std::size_t i = 0; i < rep.models.size(); ++i) {
        out << "horizon." << rep.horizon << ".model." << i
            << ".atoms=" << render_model(store, rep.program, rep.models[i]) << "\n";
        out << "horizon." << rep.horizon << ".model." << i
            << ".trace=" << trace_line(store, p.alphabet, rep.trace_models[i]) << "\n";
      }
    } else {
      out << "horizon " << rep.horizon << ": "
          << (rep.sat ? std::to_string(rep.models.size()) +
                            (rep.models.size() == 1 ? " model" : " models")
                      : std::string("no model"))
          << " (" << rep.stats.n_atoms << " atoms, " << rep.stats.n_rules << " rules)"
          << "\n";
      for (std::size_t i = 0; i < rep.models.size(); ++i) {
        out << "  model " << i + 1 << ": "
            << render_model(store, rep.program, rep.models[i]) << "\n";
        out << "  trace " << i + 1 << ": "
            << trace_line(store, p.alphabet, rep.trace_models[i]) << "\n";
      }
    }
  }
  if (!any && !kv(o)) out << "no model up to " << o.to << "\n";
  return any ? kExitOk : kExitNoModel;
}

int cmd_verify(const Options& o, std::ostream& out) {
  FormulaStore store;
  Theory th = load_theory(store, o);
  VerifyOptions vo;
  vo.lambda_max = o.verify_to;
  vo.seed = o.seed;
  vo.samples = o.samples;
  vo.budget = effective_budget(o);
  auto results = verify_theory(store, th, vo);
  bool all = true;
  if (kv(o)) out << "command=verify\nseed=" << o.seed << "\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    all = all && r.pass;
    if (kv(o)) {
      out << "check." << i << ".name=" << r.name << "\n";
      out << "check." << i << ".status=" << (r.pass ? "pass" : "fail") << "\n";
      if (!r.detail.empty()) out << "check." << i << ".detail=" << r.detail << "\n";
    } else {
      out << (r.pass ? "PASS " : "FAIL ") << r.name;
      if (!r.detail.empty()) out << " -- " << r.detail;
      out << "\n";
    }
  }
  return all ? kExitOk : kExitInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"temporal equilibrium logic on finite traces"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool with_alphabet = true) {
    sub->add_option("file", o.file, "input file")->required();
    sub->add_option("--format", o.format, "output format (human|kv)")
        ->check(CLI::IsMember({"human", "kv"}));
    if (with_alphabet)
      sub->add_option("--alphabet", o.alphabet, "extra alphabet atoms, comma separated");
    sub->add_option("--budget", o.budget, "enumeration budget in bits");
  };

  CLI::App* c_parse = app.add_subcommand("parse", "parse and echo the normalized theory");
  add_common(c_parse, false);
  c_parse->add_flag("--core", o.core, "expand derived operators");

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate the theory on a trace");
  add_common(c_eval);
  c_eval->add_option("--trace", o.trace_file, "trace file (the there-trace)")->required();
  c_eval->add_option("--here", o.here_file, "optional here-trace file");
  c_eval->add_option("--at", o.at, "time point (default 0)");

  CLI::App* c_models = app.add_subcommand("models", "enumerate temporal stable models");
  add_common(c_models);
  auto* opt_lambda = c_models->add_option("--lambda", o.lambda, "exact trace length");
  c_models->add_option("--upto", o.upto, "all lengths up to this bound")
      ->excludes(opt_lambda);
  c_models->add_flag("--tht", o.tht, "list HT-models instead");

  CLI::App* c_compile = app.add_subcommand("compile", "compile to a temporal program");
  add_common(c_compile);
  c_compile->add_flag("--bc", o.bc, "input is an action-law file");

  CLI::App* c_ground = app.add_subcommand("ground", "bounded translation to a ground program");
  add_common(c_ground);
  c_ground->add_option("--lambda", o.lambda, "trace length")->required();
  c_ground->add_flag("--solve", o.do_solve, "solve instead of emitting text");

  CLI::App* c_solve = app.add_subcommand("solve", "incremental solving over growing horizons");
  add_common(c_solve);
  c_solve->add_option("--from", o.from, "first horizon (default 0)");
  c_solve->add_option("--to", o.to, "last horizon (default 5)");
  c_solve->add_option("--mode", o.mode, "first | all-at-first | exhaustive")
      ->check(CLI::IsMember({"first", "all-at-first", "exhaustive"}));
  c_solve->add_option("--ground", o.ground, "use the bounded route at this length");

  CLI::App* c_verify = app.add_subcommand("verify", "cross-validate translations on this input");
  add_common(c_verify);
  c_verify->add_option("--seed", o.seed, "random seed");
  c_verify->add_option("--to", o.verify_to, "maximum length (default 3)");
  c_verify->add_option("--samples", o.samples, "random samples per property");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(c_parse)) return cmd_parse(o, out);
    if (app.got_subcommand(c_eval)) return cmd_eval(o, out);
    if (app.got_subcommand(c_models)) {
      if (o.lambda < 0 && o.upto < 0) {
        err << "models: one of --lambda/--upto is required\n";
        return kExitUsage;
      }
      return cmd_models(o, out);
    }
    if (app.got_subcommand(c_compile)) return cmd_compile(o, out, err);
    if (app.got_subcommand(c_ground)) return cmd_ground(o, out);
    if (app.got_subcommand(c_solve)) return cmd_solve(o, out);
    if (app.got_subcommand(c_verify)) return cmd_verify(o, out);
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << o.file << ":" << e.line << ":" << e.col << ": " << e.what()
        << "\n";
    return kExitData;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoInput;
  }
}

}  // namespace teltrace
