#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "miquel/cli/io.hpp"
#include "miquel/cli/svg.hpp"
#include "miquel/geometry.hpp"

namespace miquel::cli {

enum class Command { Generate, Mutate, Orbit, Quartic, Verify, Measure, Render };

struct RunConfig {
  Command command = Command::Generate;
  std::string input;
  std::string output;  // empty: standard output
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::optional<int> steps;
  bool json = false;

  // generate
  std::string abscissas;
  bool random = false;
  bool trapezoidal = false;
  bool vertical = false;

  // mutate
  std::string color = "white";
  bool renormalize = false;

  // measure
  bool reversed = false;

  // verify
  int trials = 100;

  RenderOptions render;
};

/// A command's products: the document written to the output path (or to
/// standard output when none is given) and an optional summary printed to
/// standard output alongside a file.
struct CommandResult {
  std::string document;
  Json summary;  // null when there is nothing to add
  std::string human;
  int exit_code = 0;
  Json error;  // printed to standard error when not null
};

CommandResult cmd_generate(const RunConfig& config);
CommandResult cmd_mutate(const RunConfig& config);
CommandResult cmd_orbit(const RunConfig& config);
CommandResult cmd_quartic(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_measure(const RunConfig& config);
CommandResult cmd_render(const RunConfig& config);

/// Full front end: parses `args` (without the program name), runs the
/// command and maps errors to exit codes. Errors go to `err` as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace miquel::cli
