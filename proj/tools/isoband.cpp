// isoband: reduce a periodic elliptic problem to a flat one and compute its bands.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "isoband/error.hpp"
#include "isoband/pipeline.hpp"
#include "isoband/problem_spec.hpp"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitError = 2;

void print_checks(const isoband::RunReport& report) {
  for (const isoband::CheckResult& c : report.checks)
    std::printf("%-4s %-32s %.3e %s %.1e\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value,
                c.lowerBound ? ">" : "<=", c.threshold);
  for (const std::string& note : report.notes) std::printf("note: %s\n", note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isothermal reduction and Floquet band solver for periodic elliptic operators"};
  app.require_subcommand(1);

  std::string specPath, outDir, verify = "full";
  int jobs = 1, repeat = 3;

  CLI::App* run = app.add_subcommand("run", "run the pipeline and write bands, report and fields");
  run->add_option("spec", specPath, "problem description (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", outDir, "output directory")->required();
  run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--verify", verify, "verification level")->check(CLI::IsMember({"fast", "full"}));

  CLI::App* benchCmd = app.add_subcommand("bench", "time every stage and report scaling ratios");
  benchCmd->add_option("spec", specPath, "problem description (JSON)")->required()->check(CLI::ExistingFile);
  benchCmd->add_option("--repeat", repeat, "repetitions per measurement")->check(CLI::PositiveNumber);
  benchCmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI::App* presets = app.add_subcommand("presets", "list the built-in problems");
  bool showJson = false;
  presets->add_flag("--json", showJson, "print each preset's full description");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*presets) {
      for (const isoband::PresetInfo& p : isoband::preset_catalog()) {
        std::printf("%-24s %s\n", p.name.c_str(), p.description.c_str());
        if (showJson) std::printf("%s\n\n", isoband::preset_json(p.name).c_str());
      }
      return 0;
    }

    const isoband::ProblemSpec spec = isoband::load_problem_spec(specPath);
    if (*benchCmd) {
      std::cout << isoband::bench(spec, repeat, jobs).table();
      return 0;
    }

    isoband::RunOptions options;
    options.verify = verify == "fast" ? isoband::VerifyLevel::Fast : isoband::VerifyLevel::Full;
    options.jobs = jobs;
    options.outDir = outDir;
    const isoband::RunReport report = isoband::run_pipeline(spec, options);
    print_checks(report);
    std::printf("%s: %s (%s)\n", report.name.c_str(), report.passed() ? "all checks passed" : "checks failed",
                (std::filesystem::path(outDir) / "report.json").c_str());
    return report.passed() ? 0 : kExitChecksFailed;
  } catch (const isoband::StageError& e) {
    std::fprintf(stderr, "error [%s] in stage %s: %s\n", isoband::to_string(e.kind()), e.stage().c_str(), e.what());
  } catch (const isoband::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", isoband::to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return kExitError;
}
