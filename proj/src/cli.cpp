#include "mqsym/cli.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mqsym/dsl.hpp"
#include "mqsym/render.hpp"

namespace mqsym::cli {
namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Diagnostics {
 public:
  Diagnostics(std::ostream& err, std::string_view source_name, bool color)
      : err_(err), source_(source_name), color_(color) {}

  void report(const Error& e, std::optional<Span> fallback = std::nullopt) const {
    auto span = e.span() ? e.span() : fallback;
    err_ << source_;
    if (span) err_ << ":" << span->line << ":" << span->column;
    err_ << ": " << (color_ ? "\x1b[1;31merror\x1b[0m" : "error") << "[" << to_string(e.code()) << "]: " << e.what()
         << "\n";
  }

 private:
  std::ostream& err_;
  std::string source_;
  bool color_;
};

// Runs queries of one script against a frozen registry and optional realization.
class Session {
 public:
  Session(Registry registry, std::optional<Realization> realization, const RunConfig& config, std::ostream& out,
          const Diagnostics& diag)
      : registry_(std::move(registry)),
        realization_(std::move(realization)),
        config_(config),
        out_(out),
        diag_(diag) {}

  /// Returns false when the statement failed.
  bool execute(const dsl::Stmt& s) {
    try {
      switch (s.kind) {
        case dsl::Stmt::Kind::ObservableDecl:
        case dsl::Stmt::Kind::JointDecl: return true;
        case dsl::Stmt::Kind::LetBinding:
          env_.insert_or_assign(s.name, dsl::lower(*s.expr, registry_, env_));
          return true;
        case dsl::Stmt::Kind::Query: return query(s);
      }
    } catch (const Error& e) {
      diag_.report(e, s.span);
      if (config_.output == OutputFormat::Json) {
        json obj;
        obj["query"] = dsl::render(s);
        obj["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
        out_ << obj.dump() << "\n";
      }
    }
    return false;
  }

 private:
  struct Result {
    Result() = default;
    Result(std::string t, std::optional<VerifyReport> r = std::nullopt, bool good = true)
        : text(std::move(t)), report(std::move(r)), ok(good) {}

    std::string text;
    std::optional<VerifyReport> report;
    bool ok = true;
  };

  bool query(const dsl::Stmt& s) {
    Result r = evaluate_query(s);
    if (config_.output == OutputFormat::Json) {
      json obj;
      obj["query"] = dsl::render(s);
      if (!r.report) {
        obj["result"] = r.text;
      } else if (r.report->skipped) {
        obj["result"] = "skipped";
        obj["reason"] = r.report->reason;
      } else {
        obj["result"] = r.report->passed() ? "pass" : "fail";
        obj["deviation"] = r.report->deviation;
        obj["tolerance"] = r.report->tolerance;
      }
      out_ << obj.dump() << "\n";
    } else {
      out_ << r.text << "\n";
    }
    return r.ok;
  }

  bool numeric_available(std::initializer_list<ObservableId> ids) const {
    if (!realization_) return false;
    for (auto id : ids)
      if (!realization_->is_mapped(id)) return false;
    return true;
  }

  Result evaluate_query(const dsl::Stmt& s) {
    using Q = dsl::Stmt::QueryKind;
    switch (s.query) {
      case Q::Normalize: {
        Tree t = dsl::lower(*s.expr, registry_, env_);
        return {render(registry_, evaluate(registry_, t))};
      }
      case Q::Trace: {
        Tree t = dsl::lower(*s.expr, registry_, env_);
        std::optional<std::size_t> dim;
        if (realization_) dim = realization_->dimension();
        return {render(registry_, trace(evaluate(registry_, t), dim))};
      }
      case Q::Verify: {
        if (!realization_)
          throw Error(ErrorCode::ConfigError, "verify needs a realization (--basis)", s.span);
        Tree t = dsl::lower(*s.expr, registry_, env_);
        VerifyReport report = verify_normal_form(*realization_, t, config_.tolerance);
        std::string text;
        if (report.skipped)
          text = "skipped (" + report.reason + ")";
        else
          text = std::string(report.passed() ? "pass" : "FAIL") + " deviation=" + format_number(report.deviation) +
                 " tol=" + format_number(report.tolerance);
        return {text, report, report.skipped || report.passed()};
      }
      case Q::Prob: {
        StateRef a = dsl::resolve(registry_, s.first);
        StateRef b = dsl::resolve(registry_, s.second);
        if (numeric_available({a.observable, b.observable}))
          return {format_number(probability(*realization_, a, b))};
        return {render(registry_, probability_symbolic(a, b))};
      }
      case Q::Expect: {
        ObservableId obs = registry_.id_of(s.name);
        StateRef b = dsl::resolve(registry_, s.second);
        if (numeric_available({obs, b.observable})) return {format_number(expectation(*realization_, obs, b))};
        return {render(registry_, expectation_symbolic(registry_, obs, b))};
      }
      case Q::Spectrum: {
        std::string text;
        for (const auto& e : registry_.spectrum(registry_.id_of(s.name))) {
          if (!text.empty()) text += ", ";
          text += e.label;
          if (e.value) text += ": " + to_string(*e.value);
        }
        return {text};
      }
    }
    return {};
  }

  Registry registry_;
  std::optional<Realization> realization_;
  const RunConfig& config_;
  std::ostream& out_;
  const Diagnostics& diag_;
  dsl::Environment env_;
};

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      auto n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "--dims expects <lo>..<hi>, got '" + text + "'");
  }
}

bool color_from_env() {
  const char* v = std::getenv("MQSYM_COLOR");
  return v != nullptr && std::string_view(v) == "1";
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  std::string s = fmt::format("{:.12g}", value);
  return s == "-0" ? "0" : s;
}

void validate(const RunConfig& config) {
  if (!(config.tolerance > 0)) throw Error(ErrorCode::ConfigError, "tolerance must be positive");
  if (config.validation_tolerance && !(*config.validation_tolerance > 0))
    throw Error(ErrorCode::ConfigError, "validation tolerance must be positive");
  if (config.dim_lo < 1) throw Error(ErrorCode::ConfigError, "dimension range must start at 1 or more");
  if (config.dim_hi < config.dim_lo) throw Error(ErrorCode::ConfigError, "dimension range is empty");
  if (config.cases < 1) throw Error(ErrorCode::ConfigError, "cases must be at least 1");
}

int execute(std::string_view source, std::string_view source_name, const std::optional<std::string>& basis_text,
            bool implicit_observables, const RunConfig& config, std::ostream& out, std::ostream& err) {
  Diagnostics diag(err, source_name, config.color);
  dsl::Program program;
  Registry registry;
  std::optional<Realization> realization;
  try {
    validate(config);
    dsl::ParseOptions options;
    options.implicit_observables = implicit_observables;
    if (basis_text) options.predeclared = read_basis_declarations(*basis_text);
    program = dsl::parse_syntax(source);
    registry = dsl::analyze(program, options);
    if (basis_text) realization = load_realization(*basis_text, registry, config.validation_tolerance);
  } catch (const Error& e) {
    diag.report(e);
    return kExitUsageError;
  }

  Session session(registry, std::move(realization), config, out, diag);
  int status = kExitOk;
  for (const auto& stmt : program)
    if (!session.execute(stmt)) status = kExitQueryError;
  return status;
}

namespace {

std::optional<std::string> load_basis(const RunConfig& config) {
  if (!config.basis_path) return std::nullopt;
  return read_file(*config.basis_path);
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string source;
  std::optional<std::string> basis;
  try {
    if (!config.script_path) throw Error(ErrorCode::ConfigError, "run needs a script path");
    source = read_file(*config.script_path);
    basis = load_basis(config);
  } catch (const Error& e) {
    Diagnostics(err, "mqsym", config.color).report(e);
    return kExitUsageError;
  }
  return execute(source, *config.script_path, basis, false, config, out, err);
}

int eval_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<std::string> basis;
  try {
    if (!config.inline_source) throw Error(ErrorCode::ConfigError, "eval needs -e <expr>");
    basis = load_basis(config);
  } catch (const Error& e) {
    Diagnostics(err, "mqsym", config.color).report(e);
    return kExitUsageError;
  }
  return execute(*config.inline_source, "<eval>", basis, true, config, out, err);
}

int fuzz_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  FuzzSummary summary;
  try {
    validate(config);
    FuzzConfig fc;
    fc.dim_lo = config.dim_lo;
    fc.dim_hi = config.dim_hi;
    fc.cases = config.cases;
    fc.seed = config.seed;
    fc.tolerance = config.tolerance;
    fc.threads = config.threads;
    summary = run_fuzz(fc);
  } catch (const Error& e) {
    Diagnostics(err, "mqsym", config.color).report(e);
    return kExitUsageError;
  }

  const auto& c = summary.config;
  if (config.output == OutputFormat::Json) {
    json obj;
    obj["query"] = "fuzz";
    obj["cases"] = summary.cases;
    obj["dims"] = {c.dim_lo, c.dim_hi};
    obj["seed"] = c.seed;
    obj["max_depth"] = c.max_depth;
    obj["tolerance"] = c.tolerance;
    obj["deviation"] = summary.max_deviation;
    obj["worst_case"] = summary.worst_case;
    obj["failures"] = summary.failures;
    obj["result"] = summary.passed() ? "pass" : "fail";
    out << obj.dump() << "\n";
  } else {
    out << "fuzz cases=" << summary.cases << " dims=" << c.dim_lo << ".." << c.dim_hi << " seed=" << c.seed
        << " max_depth=" << c.max_depth << " tol=" << format_number(c.tolerance) << "\n";
    out << "max_deviation=" << format_number(summary.max_deviation) << " worst_case=" << summary.worst_case << "\n";
    for (const auto& f : summary.failed)
      out << "fail case=" << f.index << " dim=" << f.dimension << " deviation=" << format_number(f.deviation) << "\n";
    out << "failures=" << summary.failures << "\n";
    out << "result=" << (summary.passed() ? "pass" : "fail") << "\n";
  }
  return summary.passed() ? kExitOk : kExitQueryError;
}

int fmt_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string source;
  try {
    if (!config.script_path) throw Error(ErrorCode::ConfigError, "fmt needs a script path");
    source = read_file(*config.script_path);
  } catch (const Error& e) {
    Diagnostics(err, "mqsym", config.color).report(e);
    return kExitUsageError;
  }
  try {
    out << dsl::render(dsl::parse_syntax(source));
  } catch (const Error& e) {
    Diagnostics(err, *config.script_path, config.color).report(e);
    return kExitUsageError;
  }
  return kExitOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic measurement algebra with a matrix oracle", "mqsym"};
  app.require_subcommand(1);

  RunConfig config;
  config.color = color_from_env();
  std::string dims = "2..5";
  std::string output = "text";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--basis", config.basis_path, "Basis file (JSON)");
    sub->add_option("--tol", config.tolerance, "Oracle tolerance");
    sub->add_option("--validation-tol", config.validation_tolerance, "Unitarity tolerance for basis files");
    sub->add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* run = app.add_subcommand("run", "Run a script");
  run->add_option("script", config.script_path, "Script path")->required();
  add_common(run);

  auto* eval = app.add_subcommand("eval", "Run an inline script; observables are declared on first use");
  eval->add_option("-e", config.inline_source, "Script text")->required();
  add_common(eval);

  auto* fuzz = app.add_subcommand("fuzz", "Random oracle harness");
  fuzz->add_option("--seed", config.seed, "Seed");
  fuzz->add_option("--dims", dims, "Dimension range lo..hi");
  fuzz->add_option("--cases", config.cases, "Number of cases");
  fuzz->add_option("--tol", config.tolerance, "Oracle tolerance");
  fuzz->add_option("--threads", config.threads, "Worker threads (0 = hardware)");
  fuzz->add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* fmt_cmd = app.add_subcommand("fmt", "Print a script in canonical layout");
  fmt_cmd->add_option("script", config.script_path, "Script path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mqsym: " << e.what() << "\n";
    return kExitUsageError;
  }

  config.output = output == "json" ? OutputFormat::Json : OutputFormat::Text;
  try {
    auto [lo, hi] = parse_dims(dims);
    config.dim_lo = lo;
    config.dim_hi = hi;
  } catch (const Error& e) {
    Diagnostics(err, "mqsym", config.color).report(e);
    return kExitUsageError;
  }

  if (run->parsed()) return run_command(config, out, err);
  if (eval->parsed()) return eval_command(config, out, err);
  if (fuzz->parsed()) return fuzz_command(config, out, err);
  return fmt_command(config, out, err);
}

}  // namespace mqsym::cli
