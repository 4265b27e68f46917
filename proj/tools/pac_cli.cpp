// pac: run, audit, validate and explain private average consensus scenarios.
//
// Exit codes: 0 ok/consistent, 1 other failure, 2 validation error,
// 3 distinguishable, 4 unconverged.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pac/pac.hpp"

namespace {

struct Args {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out;
  std::string format = "json";
  bool emit_transcript = false;
  std::size_t max_log_events = std::numeric_limits<std::size_t>::max();
  bool no_timestamp = false;
};

pac::Scenario load(const Args& a) {
  auto j = pac::read_json_file(a.scenario);
  if (!j.is_object()) throw pac::ScenarioError("scenario", "expected a JSON object");
  if (a.seed) j["seed"] = *a.seed;
  if (a.trials) j["trials"] = *a.trials;
  return pac::scenario_from_json(j);
}

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(a.out);
  if (!f) throw std::runtime_error("cannot write " + a.out);
  f << text;
}

int execute(const Args& a, bool audit_only) {
  auto sc = load(a);
  if (audit_only && !pac::is_audit(sc.mode)) {
    throw pac::ScenarioError("mode", "audit needs one of mask-uniformity, effective-uniformity, "
                                     "indistinguishability, leakage");
  }
  pac::RunOptions opt;
  opt.emit_transcript = a.emit_transcript;
  opt.max_log_events = a.max_log_events;
  opt.timestamp = !a.no_timestamp;
  auto out = pac::run(sc, opt);
  if (a.format == "csv") {
    emit(a, pac::to_csv(out));
  } else {
    emit(a, pac::to_json(out, opt).dump(2) + "\n");
  }
  if (out.audit) {
    std::cerr << "verdict: " << pac::to_string(out.audit->verdict) << "\n";
  } else if (!out.converged) {
    std::cerr << "phase 2 did not converge\n";
  }
  if (out.near_boundary) std::cerr << "warning: consensus estimate within tolerance of an integer\n";
  return pac::exit_code(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private average consensus: protocol runner and privacy audit"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", args.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", args.seed, "Override the scenario's master seed");
    cmd->add_option("--trials", args.trials, "Override the scenario's trial count")->check(CLI::PositiveNumber);
    cmd->add_option("--out", args.out, "Write output here instead of stdout");
    cmd->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--no-timestamp", args.no_timestamp, "Omit the timestamp from the provenance block");
  };

  auto* run = app.add_subcommand("run", "Execute the scenario's mode end to end");
  add_common(run);
  run->add_flag("--emit-transcript", args.emit_transcript, "Include the full transcript in JSON output");
  run->add_option("--max-log-events", args.max_log_events, "Truncate the transcript message log");

  auto* audit = app.add_subcommand("audit", "Run the scenario's privacy audit");
  add_common(audit);

  auto* validate = app.add_subcommand("validate", "Check a scenario file and exit");
  validate->add_option("--scenario", args.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);

  auto* explain = app.add_subcommand("explain", "Print a step-by-step walkthrough of one execution");
  explain->add_option("--scenario", args.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  explain->add_option("--seed", args.seed, "Override the scenario's master seed");
  explain->add_option("--out", args.out, "Write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : pac::kValidation;
  }

  try {
    if (*run) return execute(args, false);
    if (*audit) return execute(args, true);
    if (*validate) {
      auto sc = load(args);
      std::cout << "ok: " << sc.network.size() << " agents, " << sc.network.edge_count() << " edges, mode "
                << pac::to_string(sc.mode) << "\n";
      return pac::kOk;
    }
    if (*explain) {
      emit(args, pac::explain(load(args)));
      return pac::kOk;
    }
  } catch (const pac::ScenarioError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return pac::kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pac::kFailure;
  }
  return pac::kFailure;
}
