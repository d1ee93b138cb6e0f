#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "superloop/corpus.hpp"
#include "superloop/jsonio.hpp"

namespace {

using namespace superloop;

Json read_json_file(const std::string& path) {
  if (path == "-") {
    Json j;
    std::cin >> j;
    return j;
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

std::pair<long, long> parse_window(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("window must look like LO..HI");
  long lo = std::stol(s.substr(0, dots));
  long hi = std::stol(s.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("window must satisfy LO <= HI");
  return {lo, hi};
}

void emit(const Json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // text: flat key/value lines
  for (auto it = j.begin(); it != j.end(); ++it)
    std::cout << it.key() << ": " << it.value().dump() << "\n";
}

int cmd_algebra_info(const std::string& spec_path, const std::string& format) {
  Json desc = read_json_file(spec_path);
  auto g = algebra_from_json(desc);
  emit(algebra_info_json(*g), format);
  return 0;
}

int cmd_module_build(const std::string& spec_path, bool with_weights,
                     const std::string& window, const std::string& format) {
  Json j = read_json_file(spec_path);
  ParsedSpec ps = spec_from_json(j);
  std::optional<std::pair<long, long>> win;
  if (!window.empty()) win = parse_window(window);
  std::cerr << "building " << ps.kind << " module over "
            << ps.spec.algebra->descriptor() << "...\n";
  emit(module_build_json(ps, with_weights, win), format);
  return 0;
}

int cmd_verify(const std::string& suite, const std::vector<std::string>& spec_paths,
               const std::string& format) {
  std::vector<CheckReport> reports;
  {
    std::cerr << "running suite '" << suite << "'...\n";
    reports = run_suite(suite);
  }
  for (const auto& path : spec_paths) {
    std::cerr << "checking user spec " << path << "...\n";
    ParsedSpec ps = spec_from_json(read_json_file(path));
    VhatModule vhat = induce_and_reduce(ps.spec);
    reports.push_back(check_annihilator(vhat));
    reports.push_back(check_evaluation_criterion(vhat));
    reports.push_back(check_hw_exists(vhat));
    reports.push_back(check_main_theorem_instance(vhat));
  }
  for (const auto& r : reports) {
    if (format == "json") {
      std::cout << r.json() << "\n";
    } else {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check << " (" << r.instance
                << ")" << (r.negative_control ? " [control]" : "") << ": " << r.detail
                << "\n";
    }
  }
  int failures = 0, controls_ok = 0, controls = 0;
  for (const auto& r : reports) {
    if (r.negative_control) {
      ++controls;
      if (!r.pass) ++controls_ok;
    } else if (!r.pass) {
      ++failures;
    }
  }
  std::cerr << reports.size() << " checks, " << failures << " failures, " << controls_ok
            << "/" << controls << " controls behaving\n";
  return exit_code_for(reports);
}

int cmd_iso(const std::string& path_a, const std::string& path_b,
            const std::string& format) {
  ParsedSpec a = spec_from_json(read_json_file(path_a));
  ParsedSpec b = spec_from_json(read_json_file(path_b));
  emit(iso_json(a.spec, b.spec), format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact loop-superalgebra module workbench"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  auto* algebra = app.add_subcommand("algebra", "algebra-level commands");
  algebra->fallthrough();
  auto* info = algebra->add_subcommand("info", "dimensions, roots, z, grading");
  info->fallthrough();
  std::string info_spec;
  info->add_option("--spec", info_spec, "algebra descriptor JSON file (- for stdin)")
      ->required();

  auto* module = app.add_subcommand("module", "module-level commands");
  module->fallthrough();
  auto* build = module->add_subcommand("build", "build a module from a spec file");
  build->fallthrough();
  std::string build_spec, build_window;
  bool build_weights = false;
  build->add_option("--spec", build_spec, "module spec JSON file (- for stdin)")
      ->required();
  build->add_flag("--weights", build_weights, "include weight multiplicities");
  build->add_option("--window", build_window, "graded window LO..HI");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->fallthrough();
  std::string suite = "all";
  std::vector<std::string> verify_specs;
  verify->add_option("suite", suite, "suite name or 'all'");
  verify->add_option("--spec", verify_specs, "additional user spec files to check");

  auto* iso = app.add_subcommand("iso", "compare two module specs");
  iso->fallthrough();
  std::string iso_a, iso_b;
  iso->add_option("specA", iso_a, "first spec file")->required();
  iso->add_option("specB", iso_b, "second spec file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return cmd_algebra_info(info_spec, format);
    if (build->parsed()) return cmd_module_build(build_spec, build_weights, build_window, format);
    if (verify->parsed()) return cmd_verify(suite, verify_specs, format);
    if (iso->parsed()) return cmd_iso(iso_a, iso_b, format);
    std::cerr << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
