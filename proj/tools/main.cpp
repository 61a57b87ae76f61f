// locc — finite-LOCC distinguishability verifier.
//
//   locc nondisturb <stateset.json> [--side A|B|joint]
//   locc synth      <stateset.json>            (writes protocol/certificate to --out)
//   locc simulate   <protocol.json> <stateset.json>
//   locc domino                                 (all 16 sign choices of the mixed-domino set)
//   locc upb        [--params file | --random N]
//
// Global flags: --tol <float> --seed <u64> --samples <n> --json --out <path> -v

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "locc/cli.hpp"
#include "locc/version.hpp"

namespace {

void emit(const locc::Report& report, const locc::RunConfig& config, bool artifact_out) {
  const std::string canonical = report.canonical();
  if (config.json_output) {
    std::cout << canonical;
  } else {
    std::cout << report.command << " (inputs " << report.inputs_digest << ")\n"
              << report.verdicts.dump(2) << "\n";
  }
  // --out holds the synth artifact; for every other command it stores the report.
  if (!artifact_out && !config.out_path.empty())
    locc::write_text_file(config.out_path, canonical);
  if (config.verbosity > 0)
    std::cerr << "# timing_ms=" << report.timing_ms << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-LOCC distinguishability verifier"};
  app.set_version_flag("--version", std::string(locc::kVersion));
  app.require_subcommand(1);

  locc::RunConfig config;
  double tol_value = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "tolerance override");
  app.add_option("--seed", config.seed, "RNG seed");
  app.add_option("--samples", config.samples, "sample count");
  app.add_flag("--json", config.json_output, "machine-readable report on stdout");
  app.add_option("--out", config.out_path, "output path (synth: protocol file; else report)");
  app.add_flag("-v,--verbose", config.verbosity, "log timing to stderr");

  std::string stateset_path;
  std::string protocol_path;
  std::string side_str = "A";
  std::optional<std::string> params_path_opt;
  std::string params_path;
  int random_n = 0;

  auto* nondisturb = app.add_subcommand("nondisturb", "solve the local non-disturbing space");
  nondisturb->fallthrough();
  nondisturb->add_option("stateset", stateset_path, "state set JSON")->required();
  nondisturb->add_option("--side", side_str, "A, B, or joint")
      ->check(CLI::IsMember({"A", "B", "joint"}));

  auto* synth = app.add_subcommand("synth", "synthesize a discrimination protocol");
  synth->fallthrough();
  synth->add_option("stateset", stateset_path, "state set JSON")->required();

  auto* simulate = app.add_subcommand("simulate", "run a protocol on a state set");
  simulate->fallthrough();
  simulate->add_option("protocol", protocol_path, "protocol JSON")->required();
  simulate->add_option("stateset", stateset_path, "state set JSON")->required();

  app.add_subcommand("domino", "verify all 16 mixed-domino sign choices")->fallthrough();

  auto* upb = app.add_subcommand("upb", "certify two-qutrit UPB indistinguishability");
  upb->fallthrough();
  auto* params_opt = upb->add_option("--params", params_path, "UPB parameter JSON");
  upb->add_option("--random", random_n, "number of random parameter tuples");

  CLI11_PARSE(app, argc, argv);
  if (tol_opt->count() > 0) config.tol = tol_value;
  if (params_opt->count() > 0) params_path_opt = params_path;

  try {
    locc::Report report;
    bool artifact_out = false;
    if (app.got_subcommand("nondisturb")) {
      const locc::Side side = side_str == "A"   ? locc::Side::A
                              : side_str == "B" ? locc::Side::B
                                                : locc::Side::joint;
      report = locc::cmd_nondisturb(stateset_path, side, config);
    } else if (app.got_subcommand("synth")) {
      report = locc::cmd_synth(stateset_path, config);
      artifact_out = true;
    } else if (app.got_subcommand("simulate")) {
      report = locc::cmd_simulate(protocol_path, stateset_path, config);
    } else if (app.got_subcommand("domino")) {
      report = locc::cmd_domino(config);
    } else {
      report = locc::cmd_upb(params_path_opt, random_n, config);
    }
    emit(report, config, artifact_out);
    return report.exit_code;
  } catch (const locc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const locc::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return 3;
  } catch (const locc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 4;
  } catch (const locc::ParamDomainError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
