#pragma once

// End-to-end run: group -> ladder -> matrices -> hierarchy -> analysis ->
// measures, each stage verified before the next one starts.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monotile/io.hpp"

namespace monotile {

struct PipelineConfig {
  Json group = Json{{"kind", "lattice"}, {"d", 1}};

  // "auto" picks by group kind; otherwise lattice | pruefer | chain |
  // heisenberg | virtual | file
  std::string           ladder_route = "auto";
  std::size_t           depth        = 4;
  std::int64_t          base         = 3;  // lattice route only
  std::filesystem::path ladder_path;
  // heisenberg route: eps_s = eps_ratio^s instead of 2^-s
  std::optional<Fraction> eps_ratio;

  int k0 = 3;

  // "realize" | "file" | "default"
  std::string           matrix_source = "realize";
  std::filesystem::path matrix_path;
  std::size_t           realize_d   = 2;
  Fraction              tolerance   = Fraction(1, 100);
  std::size_t           max_depth   = 64;
  Fraction              lemma8_K    = Fraction(1);

  // Return times and partitions are checked for all n < m <= analysis_level.
  std::size_t analysis_level = 2;

  std::filesystem::path out_dir = "monotile-out";

  // Relative paths in j are resolved against base_dir.
  static PipelineConfig from_json(Json const& j, std::filesystem::path const& base_dir = {});
  Json                  to_json() const;
  // Consistency checks that need no construction; throws config errors.
  void validate() const;
};

struct CheckResult {
  std::string name;
  bool        pass = true;
  Json        detail;  // witness payload or summary
};

struct StageReport {
  std::string              name;
  bool                     pass    = true;
  bool                     skipped = false;
  std::string              error;
  std::vector<CheckResult> checks;
  double                   seconds = 0;
};

struct RunReport {
  std::vector<StageReport> stages;
  std::vector<std::string> artifacts;  // file names inside out_dir

  bool pass() const;
  // Deterministic part only; timings are kept out so reruns compare equal.
  Json to_json() const;
  Json timings_json() const;
  std::string summary() const;
};

extern std::vector<std::string> const pipeline_stage_names;

// The ladder stage on its own: follows config.ladder_route for ctx.
FolnerLadder build_configured_ladder(GroupContext const& ctx, PipelineConfig const& config);

using ProgressLog = std::function<void(std::string const&)>;

// Writes the artifacts into config.out_dir unless `write` is false. Throws
// only for configuration problems; stage failures land in the report.
RunReport run_pipeline(PipelineConfig const& config, bool write = true,
                       ProgressLog const& log = {});

}  // namespace monotile
