#include "catreg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>

#include <CLI11.hpp>
#include <json.hpp>

#include "catreg/dataset.hpp"
#include "catreg/encode.hpp"
#include "catreg/error.hpp"
#include "catreg/formula.hpp"
#include "catreg/numeric_text.hpp"
#include "catreg/solve.hpp"

namespace catreg::cli {
namespace {

struct RawArgs {
  std::string data;
  std::string schema;
  std::string formula;
  std::string scheme = "treatment";
  std::vector<std::string> refs;
  std::string tail = "two";
  std::string output = "text";
  int rounding = 2;
  std::vector<std::string> profile;
};

void add_model_options(CLI::App* sub, RawArgs& raw, bool predict) {
  sub->add_option("--data", raw.data, "CSV file with a header row")->required();
  sub->add_option("--formula", raw.formula, "model formula, e.g. \"bmi ~ female * edu\"")->required();
  sub->add_option("--schema", raw.schema, "JSON column schema (types and level order)");
  sub->add_option("--scheme", raw.scheme, "contrast scheme: treatment | effect | weighted");
  sub->add_option("--ref,--refs", raw.refs, "reference level, variable=level (repeatable)");
  sub->add_option("--output", raw.output, "text | json");
  sub->add_option("--rounding", raw.rounding, "decimal places in text tables")->check(CLI::Range(0, 12));
  if (predict) {
    sub->add_option("--profile,--set", raw.profile, "profile value, variable=value (repeatable)")
        ->required();
  } else {
    sub->add_option("--tail", raw.tail, "two | less:LABEL | greater:LABEL");
  }
}

std::optional<std::pair<std::string, std::string>> split_pair(const std::string& s, char sep) {
  const auto pos = s.find(sep);
  if (pos == std::string::npos || pos == 0) return std::nullopt;
  return std::make_pair(s.substr(0, pos), s.substr(pos + 1));
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Categorical-predictor linear regression: contrast coding, interactions, OLS tables"};
  app.require_subcommand(1, 1);
  RawArgs raw;
  auto* fit_cmd = app.add_subcommand("fit", "fit a model and print its coefficient table");
  auto* relevel_cmd = app.add_subcommand("relevel", "refit with changed reference levels (--ref required)");
  auto* encode_cmd = app.add_subcommand("encode", "print the design matrix as CSV");
  auto* predict_cmd = app.add_subcommand("predict", "estimated mean response for one profile");
  auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in oracle checks");
  add_model_options(fit_cmd, raw, false);
  add_model_options(relevel_cmd, raw, false);
  add_model_options(encode_cmd, raw, false);
  add_model_options(predict_cmd, raw, true);

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    outcome.exit_code = code == 0 ? kExitOk : kExitUsage;
    return outcome;
  }

  auto usage = [&](const std::string& msg) {
    err << "usage error: " << msg << "\n";
    outcome.exit_code = kExitUsage;
    return outcome;
  };

  CliConfig cfg;
  if (fit_cmd->parsed()) cfg.subcommand = Subcommand::Fit;
  if (relevel_cmd->parsed()) cfg.subcommand = Subcommand::Relevel;
  if (encode_cmd->parsed()) cfg.subcommand = Subcommand::Encode;
  if (predict_cmd->parsed()) cfg.subcommand = Subcommand::Predict;
  if (selftest_cmd->parsed()) {
    cfg.subcommand = Subcommand::Selftest;
    outcome.config = cfg;
    return outcome;
  }

  cfg.data_path = raw.data;
  if (!raw.schema.empty()) cfg.schema_path = raw.schema;
  cfg.formula = raw.formula;
  cfg.rounding = raw.rounding;

  auto scheme = parse_contrast_kind(raw.scheme);
  if (!scheme) return usage("unknown scheme '" + raw.scheme + "' (treatment | effect | weighted)");
  cfg.scheme = *scheme;

  for (const auto& r : raw.refs) {
    auto kv = split_pair(r, '=');
    if (!kv) return usage("--ref expects variable=level, got '" + r + "'");
    cfg.refs[kv->first] = kv->second;
  }
  if (cfg.subcommand == Subcommand::Relevel && cfg.refs.empty()) {
    return usage("relevel needs at least one --ref variable=level");
  }
  for (const auto& r : raw.profile) {
    auto kv = split_pair(r, '=');
    if (!kv) return usage("--profile expects variable=value, got '" + r + "'");
    cfg.profile[kv->first] = kv->second;
  }

  if (raw.output == "text") {
    cfg.output = OutputFormat::Text;
  } else if (raw.output == "json") {
    cfg.output = OutputFormat::Json;
  } else {
    return usage("unknown output format '" + raw.output + "' (text | json)");
  }

  if (raw.tail != "two") {
    auto kv = split_pair(raw.tail, ':');
    if (!kv || kv->second.empty() || (kv->first != "less" && kv->first != "greater")) {
      return usage("--tail expects two, less:LABEL or greater:LABEL, got '" + raw.tail + "'");
    }
    cfg.tail = TailRequest{kv->second, kv->first == "less" ? Direction::Less : Direction::Greater};
  }
  outcome.config = std::move(cfg);
  return outcome;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (config.subcommand == Subcommand::Selftest) {
    return run_selftest(out) ? kExitOk : kExitSelftestFailed;
  }
  try {
    Schema schema;
    if (config.schema_path) {
      std::ifstream in(*config.schema_path);
      if (!in) throw Error(ErrorCode::IoError, "cannot open '" + *config.schema_path + "'");
      schema = read_schema_json(in);
    }
    const FormulaAst ast = parse_formula(config.formula);
    const auto vars = variables(ast);
    for (const auto& [var, level] : config.refs) {
      if (std::find(vars.begin(), vars.end(), var) == vars.end()) {
        err << "usage error: --ref names '" << var << "', which is not a predictor in the formula\n";
        return kExitUsage;
      }
    }

    const Dataset raw = read_csv_file(config.data_path, schema);
    std::vector<std::string> used = vars;
    used.push_back(ast.response);
    const Dataset data = listwise_delete(raw, used);
    if (data.n_rows() < raw.n_rows()) {
      err << "note: listwise deletion dropped " << raw.n_rows() - data.n_rows() << " of "
          << raw.n_rows() << " rows\n";
    }

    Refs refs;
    for (const auto& [var, level] : config.refs) refs = relevel(refs, data, var, level);

    const DesignMatrix design = build_design(ast, data, config.scheme, refs);
    for (const auto& w : design.info.warnings) err << "warning: " << w << "\n";

    if (config.subcommand == Subcommand::Encode) {
      write_design_csv(out, design);
      return kExitOk;
    }

    const FitResult result = fit(design);

    if (config.subcommand == Subcommand::Predict) {
      const double estimate = predict_mean(result, config.profile);
      if (config.output == OutputFormat::Json) {
        nlohmann::ordered_json doc;
        doc["response"] = ast.response;
        doc["profile"] = config.profile;
        doc["estimate"] = estimate;
        out << doc.dump(2) << "\n";
      } else {
        out << ast.response << " = " << format_number(estimate, config.rounding) << "\n";
      }
      return kExitOk;
    }

    ReportOptions options;
    options.rounding = config.rounding;
    options.tail = config.tail;
    if (config.tail) {
      const auto& labels = result.labels;
      const bool known = std::any_of(labels.begin(), labels.end(),
                                     [&](const ColumnLabel& l) { return l.name == config.tail->label; });
      if (!known) {
        err << "usage error: --tail names '" << config.tail->label << "'; coefficients are:";
        for (const auto& l : labels) err << " '" << l.name << "'";
        err << "\n";
        return kExitUsage;
      }
    }
    out << (config.output == OutputFormat::Json ? render_json(result, options)
                                                : render_text(result, options));
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace catreg::cli
