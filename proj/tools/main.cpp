#include "bredon/error.hpp"
#include "bredon/scenarios.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>

using namespace bredon;

namespace {

Scenario resolve(const std::string& what) {
  for (const auto& name : builtin_scenarios())
    if (name == what) return builtin_scenario(name);
  if (std::filesystem::exists(what)) return load_scenario(what);
  throw ValidationError("'" + what + "' is neither a built-in scenario nor a readable file");
}

void describe(const Scenario& s) {
  std::cout << s.name << "\n" << s.description << "\n\n";
  std::cout << "control group order " << build_group(s.control).order() << "\n";
  for (const auto& f : s.factors) {
    auto x = build_complex(s, f);
    std::cout << "factor " << f.name << ":";
    for (int n = 0; n <= x.dimension(); ++n) {
      std::cout << (n ? "," : "") << " dim " << n << " [";
      for (std::size_t i = 0; i < x.count(n); ++i)
        std::cout << (i ? " " : "") << x.cell(n, static_cast<Index>(i)).name << ":"
                  << x.cell(n, static_cast<Index>(i)).stabilizer.order();
      std::cout << "]";
    }
    if (!f.twist.empty()) std::cout << " (twisted with --twisted)";
    std::cout << "\n";
  }
  for (const auto& c : s.cocycles)
    std::cout << "cocycle " << c.name << (c.d8_pairing ? ": D8 pairing on (Z/2)^2" : ": explicit table") << "\n";
  if (!s.remarks.empty()) std::cout << "\nremarks:\n";
  for (const auto& r : s.remarks) std::cout << "  - " << r << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bredon cohomology and Kunneth assembly for Vafa-Witten orbifolds"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "compute a scenario");
  std::string target, format = "text";
  RunOptions options;
  run->add_option("scenario", target, "built-in name or JSON file")->required();
  run->add_flag("--twisted", options.twisted, "apply the scenario's twist");
  run->add_flag("--assume-collapse", options.assume_collapse, "assert spectral-sequence collapse");
  run->add_option("--direct-check", options.direct_check_depth, "factors in the direct product check (0 disables)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* verify = app.add_subcommand("verify", "verification sweeps");
  verify->require_subcommand(1);
  auto* iso = verify->add_subcommand("pullback-iso", "pullback representation-ring isomorphism sweep");
  std::size_t bound = 8;
  std::string verify_format = "text";
  iso->add_option("--order-bound", bound)->check(CLI::PositiveNumber);
  iso->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));

  auto* list = app.add_subcommand("list", "list built-in objects");
  std::string what;
  list->add_option("what", what)->required()->check(CLI::IsMember({"scenarios"}));

  auto* desc = app.add_subcommand("describe", "describe a scenario");
  std::string desc_target;
  desc->add_option("scenario", desc_target)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      auto report = run_scenario(resolve(target), options);
      if (format == "json")
        std::cout << report_to_json(report).dump(2) << "\n";
      else
        std::cout << report_to_text(report);
      return report.exit_code();
    }
    if (*iso) {
      auto r = verify_pullback_iso_sweep(bound);
      if (verify_format == "json") {
        std::cout << sweep_to_json(r).dump(2) << "\n";
      } else {
        std::cout << r.passed() << "/" << r.entries.size() << " diagrams pass at order bound " << bound << "\n";
        for (const auto* e : r.failures())
          std::cout << "  FAIL " << e->p << " x_" << e->s << " " << e->q << (e->twisted ? " (twisted)" : "")
                    << ": pullback order " << e->report.pullback_order << ", tensor "
                    << e->report.domain.to_string() << ", R(pullback) rank " << e->report.target_rank << "\n";
      }
      return r.failures().empty() ? 0 : 3;
    }
    if (*list) {
      for (const auto& n : builtin_scenarios()) std::cout << n << "\n";
      return 0;
    }
    if (*desc) {
      describe(resolve(desc_target));
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 3;
  } catch (const CollapseError& e) {
    std::cerr << "collapse error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
