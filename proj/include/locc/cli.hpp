// Command implementations behind the CLI binary.
//
// Each command builds a Report whose canonical JSON serialization is a pure
// function of (inputs, seed, tolerances, version): wall-clock timing is kept
// out of the serialized form and logged separately, so repeated runs with the
// same seed produce byte-identical reports.
//
// Exit-code contract:
//   0 success / certified
//   1 verdict-negative (a witness or failed certification — the outcome that
//     would falsify the results being verified)
//   2 parse failure, 3 dimension mismatch, 4 validation failure,
//   5 parameter-domain violation

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "locc/json_io.hpp"
#include "locc/states.hpp"

namespace locc {

struct RunConfig {
  std::optional<double> tol;      // override of the verification tolerance
  std::uint64_t seed = 0;
  int samples = 1;
  std::string out_path;           // command artifact / report destination
  bool json_output = false;       // machine-readable stdout
  int verbosity = 0;

  void validate() const;  // samples >= 1, tolerances > 0
};

struct Report {
  std::string command;
  std::string inputs_digest;
  Json verdicts;
  long long timing_ms = 0;  // informational; excluded from canonical JSON
  std::string version;
  int exit_code = 0;

  // Deterministic serialization: command, digest, verdicts, version.
  Json to_json() const;
  std::string canonical() const;  // to_json().dump(2) + newline
};

// splitmix64: the documented per-sample substream scheme.  Substream i uses
// an mt19937_64 seeded with splitmix64(seed XOR splitmix64(i + 1)), so
// parallel and serial sample orders agree.
std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

// FNV-1a 64-bit hex digest of the canonical input bytes.
std::string fnv1a_hex(const std::string& bytes);

Report cmd_nondisturb(const std::string& stateset_path, Side side, const RunConfig& config);
Report cmd_synth(const std::string& stateset_path, const RunConfig& config);
Report cmd_simulate(const std::string& protocol_path, const std::string& stateset_path,
                    const RunConfig& config);
Report cmd_domino(const RunConfig& config);
Report cmd_upb(const std::optional<std::string>& params_path, int random_n,
               const RunConfig& config);

// Uniform UpbParams with sin/cos of theta and gamma at least `floor` on both
// sides (phi uniform over [0, 2pi)), drawn from the sample substream.
UpbParams sample_upb_params(std::mt19937_64& rng, double floor = 0.05);

}  // namespace locc
