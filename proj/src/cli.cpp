#include "ngstrat/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ngstrat/algebra.hpp"
#include "ngstrat/errors.hpp"
#include "ngstrat/quads.hpp"
#include "ngstrat/reason.hpp"
#include "ngstrat/rules_syntax.hpp"
#include "ngstrat/store.hpp"
#include "ngstrat/stratify.hpp"

namespace ngstrat {
namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

/// Carries an exit code and message out of a command.
struct Exit {
  int code;
  std::string message;
};

class Io {
 public:
  Io(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw Exit{kUsage, "standard input can only be read once"};
      stdin_used_ = true;
      return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Exit{kUsage, "cannot read " + path};
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  void write(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Exit{kUsage, "cannot write " + path};
    f << text;
    if (!f) throw Exit{kUsage, "cannot write " + path};
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  bool stdin_used_ = false;
};

std::string display_path(const std::string& path) { return path == "-" ? "<stdin>" : path; }

/// Runs f, turning syntax errors into usage failures that name the file.
template <typename F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw Exit{kUsage, display_path(path) + ":" + e.what()};
  } catch (const RuleError& e) {
    throw Exit{kUsage, display_path(path) + ":" + e.what()};
  }
}

template <typename Parse>
auto parse_file(Io& io, const std::string& path, Parse&& parse) {
  const std::string text = io.read(path);
  return guarded(path, [&] { return parse(text); });
}

NGFamily load_family(Io& io, const std::string& path) {
  return parse_file(io, path, [](const std::string& t) { return parse_quads(t); });
}

struct Options {
  std::string file;
  std::string second;
  std::string output;
  bool annotations = false;
  std::uint64_t level = 0;
  std::string policy;
  std::string rules;
  bool builtin = false;
  std::string track;
  bool infer_uses = false;
  bool strict = false;
};

int cmd_check(Io& io, const Options& o, std::ostream& out) {
  const std::string text = io.read(o.file);
  const NGFamily n = guarded(o.file, [&] { return parse_quads(text); });
  const CheckReport report = check_batch(n);
  if (!report.ok) {
    out << "cycle: " << format_cycle(report.cycle) << '\n';
    return kFailed;
  }
  if (o.annotations) {
    const auto levels = guarded(o.file, [&] { return parse_levels_annotation(text); });
    if (!levels) {
      out << "annotations: no levels header\n";
      return kFailed;
    }
    if (!verify_levels(n, *levels)) {
      out << "annotations: levels header does not stratify the family\n";
      return kFailed;
    }
  }
  out << "ok: " << n.size() << " assignments\n";
  return kOk;
}

int cmd_levels(Io& io, const Options& o) {
  const NGFamily n = load_family(io, o.file);
  const LevelAssignment levels = infer_levels(n);
  io.write(o.output, serialize_quads(n, &levels));
  return kOk;
}

int cmd_slice(Io& io, const Options& o) {
  const NGFamily n = load_family(io, o.file);
  io.write(o.output, serialize_quads(slice(n, o.level)));
  return kOk;
}

int cmd_merge(Io& io, const Options& o) {
  const auto policy = parse_policy(o.policy);
  if (!policy) throw Exit{kUsage, "unknown policy '" + o.policy + "' (left, right, drop, rename)"};
  const NGFamily a = load_family(io, o.file);
  const NGFamily b = load_family(io, o.second);
  io.write(o.output, serialize_quads(merge(a, b, *policy)));
  return kOk;
}

int cmd_meet(Io& io, const Options& o) {
  const NGFamily a = load_family(io, o.file);
  const NGFamily b = load_family(io, o.second);
  io.write(o.output, serialize_quads(meet(a, b)));
  return kOk;
}

int cmd_reason(Io& io, const Options& o, std::ostream& err) {
  if (o.rules.empty() && !o.builtin) throw Exit{kUsage, "reason needs --rules and/or --builtin"};
  const NGFamily n = load_family(io, o.file);
  std::vector<Rule> rules;
  if (!o.rules.empty()) {
    rules = parse_file(io, o.rules, [](const std::string& t) { return parse_rules(t); });
  }
  if (o.builtin) {
    for (Rule& r : builtin_closure_rules()) rules.push_back(std::move(r));
  }

  NGFamily result;
  if (o.track.empty()) {
    result = ngstrat::apply(rules, n);
  } else {
    const ReasonerId id{Term::iri(o.track)};
    const Reasoner gamma = [&](const NGFamily& m) { return ngstrat::apply(rules, m, id); };
    result = with_tracking(id, gamma, n);
  }
  if (o.infer_uses) result = infer_uses(result);

  io.write(o.output, serialize_quads(result));
  const CheckReport report = check_batch(result);
  if (!report.ok) {
    err << "cycle: " << format_cycle(report.cycle) << '\n';
    return kFailed;
  }
  return kOk;
}

int cmd_apply(Io& io, const Options& o, std::ostream& err) {
  const NGFamily n = load_family(io, o.file);
  const std::vector<Op> ops = parse_file(io, o.second, [](const std::string& t) { return parse_ops(t); });
  StratifiedStore store = StratifiedStore::order_init(n);

  std::size_t accepted = 0;
  std::size_t rejected = 0;
  for (const Op& op : ops) {
    std::string reason;
    if (op.kind == Op::Kind::remove) {
      if (store.contains(op.name)) {
        store.remove(op.name);
      } else {
        reason = "precondition: name not assigned";
      }
    } else if (store.contains(op.name)) {
      reason = "precondition: name already assigned";
    } else {
      const InsertResult r = store.try_insert(op.name, op.triple);
      if (!r.accepted) {
        reason = r.rejection == Rejection::self_reference ? "case (a): name occurs in its own triple"
                                                          : "case (a)";
        if (!r.cycle.empty()) reason += ": cycle " + format_cycle(r.cycle);
      }
    }
    if (reason.empty()) {
      ++accepted;
      continue;
    }
    ++rejected;
    err << o.second << ":" << op.line << ": rejected " << (op.kind == Op::Kind::insert ? "+ " : "- ")
        << op.name.lexical() << ": " << reason << '\n';
    if (o.strict) return kFailed;
  }
  io.write(o.output, serialize_quads(store.family()));
  err << "applied " << ops.size() << " operations: " << accepted << " accepted, " << rejected
      << " rejected\n";
  return kOk;
}

int cmd_canon(Io& io, const Options& o) {
  io.write(o.output, serialize_quads(canonicalize(load_family(io, o.file))));
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Named-graph families: stratification checks, merges and reasoning", "ngstrat"};
  app.require_subcommand(1);
  Options o;

  auto output_opt = [&](CLI::App* sub) {
    sub->add_option("-o,--output", o.output, "Output file (default: standard output)");
  };

  auto* check = app.add_subcommand("check", "Check that a document is well-stratified");
  check->add_option("file", o.file, "Quad document, or - for standard input")->required();
  check->add_flag("--annotations", o.annotations, "Also verify the '# levels:' header");

  auto* levels = app.add_subcommand("levels", "Annotate a document with minimal levels");
  levels->add_option("file", o.file)->required();
  output_opt(levels);

  auto* slice_cmd = app.add_subcommand("slice", "Keep assignments up to a level");
  slice_cmd->add_option("file", o.file)->required();
  slice_cmd->add_option("--level", o.level, "Highest level kept")->required();
  output_opt(slice_cmd);

  auto* merge_cmd = app.add_subcommand("merge", "Merge two documents");
  merge_cmd->add_option("a", o.file)->required();
  merge_cmd->add_option("b", o.second)->required();
  merge_cmd->add_option("--policy", o.policy, "left, right, drop or rename")->required();
  output_opt(merge_cmd);

  auto* meet_cmd = app.add_subcommand("meet", "Common assignments of two documents");
  meet_cmd->add_option("a", o.file)->required();
  meet_cmd->add_option("b", o.second)->required();
  output_opt(meet_cmd);

  auto* reason_cmd = app.add_subcommand("reason", "Close a document under rules");
  reason_cmd->add_option("file", o.file)->required();
  reason_cmd->add_option("--rules", o.rules, "Rules file");
  reason_cmd->add_flag("--builtin", o.builtin, "Add the transitive/reflexive/symmetric/reverse rules");
  reason_cmd->add_option("--track", o.track, "Tag changes with this reasoner IRI");
  reason_cmd->add_flag("--infer-uses", o.infer_uses, "Derive uses links between reasoners");
  output_opt(reason_cmd);

  auto* apply_cmd = app.add_subcommand("apply", "Replay an ops log incrementally");
  apply_cmd->add_option("file", o.file)->required();
  apply_cmd->add_option("opslog", o.second)->required();
  apply_cmd->add_flag("--strict", o.strict, "Stop at the first rejected operation");
  output_opt(apply_cmd);

  auto* canon_cmd = app.add_subcommand("canon", "Canonical serialization");
  canon_cmd->add_option("file", o.file)->required();
  output_opt(canon_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ngstrat: " << e.what() << '\n';
    return kUsage;
  }

  Io io(in, out);
  try {
    if (check->parsed()) return cmd_check(io, o, out);
    if (levels->parsed()) return cmd_levels(io, o);
    if (slice_cmd->parsed()) return cmd_slice(io, o);
    if (merge_cmd->parsed()) return cmd_merge(io, o);
    if (meet_cmd->parsed()) return cmd_meet(io, o);
    if (reason_cmd->parsed()) return cmd_reason(io, o, err);
    if (apply_cmd->parsed()) return cmd_apply(io, o, err);
    if (canon_cmd->parsed()) return cmd_canon(io, o);
  } catch (const Exit& e) {
    err << "ngstrat: " << e.message << '\n';
    return e.code;
  } catch (const CycleError& e) {
    err << e.what() << '\n';
    return kFailed;
  } catch (const ConflictError& e) {
    err << "ngstrat: " << e.what() << '\n';
    return kFailed;
  } catch (const SerializeError& e) {
    err << "ngstrat: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "ngstrat: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ngstrat
