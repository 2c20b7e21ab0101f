#include "fret2mtl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "fret2mtl/equiv.hpp"
#include "fret2mtl/formula_text.hpp"
#include "fret2mtl/fretish.hpp"
#include "fret2mtl/traces.hpp"
#include "fret2mtl/translator.hpp"

namespace fret2mtl {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << body;
}

Formula read_formula(const std::string& path) {
  auto list = parse_formula_file(read_file(path), false);
  if (list.empty()) throw UsageError("'" + path + "' contains no formula");
  return list.front();
}

Semantics semantics_of(const std::string& name) {
  auto s = parse_semantics(name);
  if (!s) throw UsageError("unknown semantics '" + name + "'");
  return *s;
}

Dialect dialect_of(const std::string& name) {
  return name == "nuxmv" ? Dialect::NuXmvLtl : Dialect::Canonical;
}

Json metrics_json(const MetricsReport& m) {
  return Json{{"size", m.size},
              {"temp_ops", m.temp_ops},
              {"props", m.props},
              {"temporal_depth", m.temporal_depth}};
}

std::size_t trace_bits_limit() {
  const char* env = std::getenv("FRET2MTL_MAX_TRACE_BITS");
  if (env == nullptr || *env == '\0') return kDefaultMaxTraceBits;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) throw UsageError("FRET2MTL_MAX_TRACE_BITS must be a positive integer");
  return v;
}

std::vector<std::string> split_props(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string req;
  std::string semantics;
  std::string dialect = "canonical";
  std::uint32_t k = 3;
  std::string out_dir;
  std::string stop = "StopCondition";
  std::string formula;
  bool json = false;
  std::string dir;
  std::string a;
  std::string b;
  std::string props;
  std::size_t max_len = 6;
  std::size_t max_prefix = 4;
  std::size_t max_loop = 2;
  bool implication = false;
  bool initial = false;
  std::string cex;
  unsigned jobs = 1;
  std::string trace;
  std::optional<std::uint64_t> t;
};

int cmd_translate(const Options& o, std::ostream& out) {
  const Requirement r = parse_requirement(o.req);
  out << print_formula(translate(r, semantics_of(o.semantics)), dialect_of(o.dialect)) << "\n";
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Semantics sem = semantics_of(o.semantics);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const auto templates = enumerate_templates(o.k, o.stop);
  Json entries = Json::array();
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const Requirement& r = templates[i];
    std::ostringstream name;
    name << std::setw(3) << std::setfill('0') << i << '_' << name_of(r.scope.kind) << '_'
         << name_of(r.condition.kind) << '_' << name_of(r.timing.kind) << ".mtl";
    const Formula f = translate(r, sem);
    const std::string sentence = render_requirement(r);
    write_file(dir / name.str(), "# " + sentence + "\n" + print_formula(f, dialect_of(o.dialect)) + "\n");
    entries.push_back(Json{{"index", i},
                           {"file", name.str()},
                           {"sentence", sentence},
                           {"scope", name_of(r.scope.kind)},
                           {"condition", name_of(r.condition.kind)},
                           {"timing", name_of(r.timing.kind)},
                           {"metrics", metrics_json(metrics(f))}});
  }
  Json index{{"k", o.k},
             {"semantics", name_of(sem)},
             {"dialect", o.dialect},
             {"count", templates.size()},
             {"templates", entries}};
  write_file(dir / "index.json", index.dump(2) + "\n");
  out << "wrote " << templates.size() << " formulas to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_metrics(const Options& o, std::ostream& out) {
  const MetricsReport m = metrics(read_formula(o.formula));
  if (o.json) {
    out << metrics_json(m).dump(2) << "\n";
  } else {
    out << "size: " << m.size << "\ntemp_ops: " << m.temp_ops << "\nprops: " << m.props
        << "\ntemporal_depth: " << m.temporal_depth << "\n";
  }
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const fs::path dir(o.dir);
  Json index;
  try {
    index = Json::parse(read_file((dir / "index.json").string()));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed index.json: ") + e.what());
  }
  struct Sum {
    std::size_t n = 0;
    double size = 0, temp_ops = 0, props = 0, depth = 0;
  };
  std::map<std::string, Sum> sums;
  for (const auto& entry : index.at("templates")) {
    const std::string file = entry.at("file").get<std::string>();
    const MetricsReport m = metrics(read_formula((dir / file).string()));
    Sum& s = sums[entry.at("timing").get<std::string>()];
    ++s.n;
    s.size += static_cast<double>(m.size);
    s.temp_ops += static_cast<double>(m.temp_ops);
    s.props += static_cast<double>(m.props);
    s.depth += static_cast<double>(m.temporal_depth);
  }
  Json rows = Json::array();
  for (TimingKind t : kAllTimings) {
    auto it = sums.find(std::string(name_of(t)));
    if (it == sums.end()) continue;
    const Sum& s = it->second;
    const double n = static_cast<double>(s.n);
    rows.push_back(Json{{"timing", name_of(t)},
                        {"count", s.n},
                        {"size", s.size / n},
                        {"temp_ops", s.temp_ops / n},
                        {"props", s.props / n},
                        {"temporal_depth", s.depth / n}});
  }
  if (o.json) {
    out << Json{{"semantics", index.value("semantics", "")}, {"rows", rows}}.dump(2) << "\n";
    return kExitOk;
  }
  out << std::left << std::setw(12) << "timing" << std::right << std::setw(6) << "n"
      << std::setw(10) << "size" << std::setw(10) << "temp_ops" << std::setw(10) << "props"
      << std::setw(10) << "depth" << "\n";
  out << std::fixed << std::setprecision(2);
  for (const auto& row : rows) {
    out << std::left << std::setw(12) << row["timing"].get<std::string>() << std::right
        << std::setw(6) << row["count"].get<std::size_t>() << std::setw(10)
        << row["size"].get<double>() << std::setw(10) << row["temp_ops"].get<double>()
        << std::setw(10) << row["props"].get<double>() << std::setw(10)
        << row["temporal_depth"].get<double>() << "\n";
  }
  return kExitOk;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const Formula f = read_formula(o.a);
  const Formula g = read_formula(o.b);
  CheckConfig cfg;
  cfg.semantics = semantics_of(o.semantics);
  if (o.props.empty()) {
    std::set<std::string> all = atoms(f);
    all.merge(atoms(g));
    if (all.empty()) throw UsageError("neither formula has atoms; pass --props");
    cfg.props.assign(all.begin(), all.end());
  } else {
    cfg.props = split_props(o.props);
  }
  cfg.max_len = o.max_len;
  cfg.max_prefix = o.max_prefix;
  cfg.max_loop = o.max_loop;
  cfg.max_trace_bits = trace_bits_limit();
  cfg.workers = o.jobs;
  cfg.initial_only = o.initial;
  const Verdict v = o.implication ? check_implication(f, g, cfg) : check_equiv(f, g, cfg);
  if (v.holds()) {
    out << (o.implication ? "Valid up to bounds" : "Equivalent up to bounds") << " ("
        << v.traces_checked << " traces)\n";
    return kExitOk;
  }
  const Counterexample& c = *v.counterexample;
  const std::string body =
      std::visit([](const auto& rho) { return format_trace(rho); }, c.trace) + "t=" +
      std::to_string(c.t) + "\n";
  out << "Counterexample at t=" << c.t << ": a is " << (c.lhs ? "true" : "false") << ", b is "
      << (c.rhs ? "true" : "false") << "\n"
      << body;
  if (!o.cex.empty()) write_file(o.cex, body);
  return kExitCounterexample;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Formula f = read_formula(o.formula);
  const TraceDocument doc = parse_trace_text(read_file(o.trace));
  const std::uint64_t t = o.t.value_or(doc.t.value_or(0));
  bool result;
  if (const auto* rho = std::get_if<Trace>(&doc.trace)) {
    result = eval(f, *rho, t);
  } else {
    result = eval_lasso(f, std::get<LassoTrace>(doc.trace), t);
  }
  out << (result ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_export_last(const Options& o, std::ostream& out) {
  out << print_formula(last_encoded_problem(read_formula(o.formula)), dialect_of(o.dialect))
      << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translate structured requirements to MTL and check formulas on bounded traces",
               "fret2mtl"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> semantics_names{"past", "fin", "inf"};
  const std::vector<std::string> dialect_names{"canonical", "nuxmv"};

  auto* translate_cmd = app.add_subcommand("translate", "Translate one requirement sentence");
  translate_cmd->add_option("--req", o.req, "Requirement sentence")->required();
  translate_cmd->add_option("--semantics", o.semantics)->required()->check(CLI::IsMember(semantics_names));
  translate_cmd->add_option("--dialect", o.dialect)->check(CLI::IsMember(dialect_names));

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Translate all 240 templates");
  enumerate_cmd->add_option("--k", o.k, "Bound for within/for/after")->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--out", o.out_dir, "Output directory")->required();
  enumerate_cmd->add_option("--semantics", o.semantics)->required()->check(CLI::IsMember(semantics_names));
  enumerate_cmd->add_option("--stop", o.stop, "Stop condition atom");
  enumerate_cmd->add_option("--dialect", o.dialect)->check(CLI::IsMember(dialect_names));

  auto* metrics_cmd = app.add_subcommand("metrics", "Structural metrics of a formula");
  metrics_cmd->add_option("--formula", o.formula)->required();
  metrics_cmd->add_flag("--json", o.json);

  auto* report_cmd = app.add_subcommand("report", "Average metrics per timing of an enumerated directory");
  report_cmd->add_option("--dir", o.dir)->required();
  report_cmd->add_flag("--json", o.json);

  auto* equiv_cmd = app.add_subcommand("equiv", "Bounded equivalence or implication check");
  equiv_cmd->add_option("--a", o.a)->required();
  equiv_cmd->add_option("--b", o.b)->required();
  equiv_cmd->add_option("--semantics", o.semantics)->required()->check(CLI::IsMember(semantics_names));
  equiv_cmd->add_option("--props", o.props, "Comma-separated propositions");
  equiv_cmd->add_option("--max-len", o.max_len)->check(CLI::PositiveNumber);
  equiv_cmd->add_option("--max-prefix", o.max_prefix)->check(CLI::NonNegativeNumber);
  equiv_cmd->add_option("--max-loop", o.max_loop)->check(CLI::PositiveNumber);
  equiv_cmd->add_flag("--implication", o.implication, "Check a -> b instead of a <-> b");
  equiv_cmd->add_flag("--initial", o.initial, "Compare only at the first position");
  equiv_cmd->add_option("--cex", o.cex, "Write the counterexample trace here");
  equiv_cmd->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a trace file");
  eval_cmd->add_option("--formula", o.formula)->required();
  eval_cmd->add_option("--trace", o.trace)->required();
  eval_cmd->add_option("--t", o.t);

  auto* export_cmd = app.add_subcommand("export-last", "LAST-encoded problem for infinite-trace checkers");
  export_cmd->add_option("--formula", o.formula)->required();
  export_cmd->add_option("--dialect", o.dialect)->check(CLI::IsMember(dialect_names));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (translate_cmd->parsed()) return cmd_translate(o, out);
    if (enumerate_cmd->parsed()) return cmd_enumerate(o, out);
    if (metrics_cmd->parsed()) return cmd_metrics(o, out);
    if (report_cmd->parsed()) return cmd_report(o, out);
    if (equiv_cmd->parsed()) return cmd_equiv(o, out);
    if (eval_cmd->parsed()) return cmd_eval(o, out);
    if (export_cmd->parsed()) return cmd_export_last(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace fret2mtl
