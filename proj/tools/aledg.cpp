#include "aledg/cases.hpp"
#include "aledg/config.hpp"
#include "aledg/driver.hpp"
#include "aledg/errors.hpp"
#include "aledg/output.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

// Extra arguments of the form `--key value` or `--key=value`.
aledg::Overrides parse_flags(const std::vector<std::string>& args) {
  aledg::Overrides flags;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0 || a.size() == 2) throw aledg::ConfigError(a, "unexpected argument");
    const std::string body = a.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      flags.emplace_back(body.substr(0, eq), body.substr(eq + 1));
    } else {
      if (i + 1 >= args.size()) throw aledg::ConfigError(body, "missing value");
      flags.emplace_back(body, args[++i]);
    }
  }
  return flags;
}

aledg::RunConfig load(const std::string& file, const std::vector<std::string>& extras) {
  const aledg::Overrides entries = file.empty() ? aledg::Overrides{} : aledg::read_config_file(file);
  return aledg::parse_config(entries, parse_flags(extras));
}

std::vector<int> parse_resolutions(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::logic_error&) {
      throw aledg::ConfigError("resolutions", "invalid entry '" + item + "'");
    }
  }
  return out;
}

void print_result(const aledg::RunResult& r) {
  std::cout << "case " << r.case_name << ": " << r.steps << " steps to t = " << aledg::format_number(r.time) << ", "
            << r.cells << " cells\n";
  if (r.has_reference)
    std::cout << "density error L1 " << aledg::format_number(r.l1) << " L2 " << aledg::format_number(r.l2) << " Linf "
              << aledg::format_number(r.linf) << "\n";
  if (!r.output_dir.empty()) std::cout << "output written to " << r.output_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arbitrary Lagrangian-Eulerian discontinuous Galerkin solver for the Euler equations"};
  app.require_subcommand(1);

  std::string config_file;
  auto* run = app.add_subcommand("run", "Run one case");
  run->add_option("--config", config_file, "Configuration file")->check(CLI::ExistingFile);
  run->allow_extras();

  std::string resolutions;
  auto* converge = app.add_subcommand("converge", "Convergence study over several resolutions");
  converge->add_option("--config", config_file, "Configuration file")->check(CLI::ExistingFile);
  converge->add_option("--resolutions", resolutions, "Comma separated resolutions, e.g. 100,200,400")->required();
  converge->allow_extras();

  app.add_subcommand("cases", "List the registered cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (app.got_subcommand("cases")) {
      for (const auto& name : aledg::case_names()) {
        const auto c = aledg::get_case(name);
        std::cout << name << " (" << c.dim << "D, T = " << c.final_time << ", reference "
                  << aledg::to_string(c.reference) << "): " << c.description << "\n";
      }
      return 0;
    }
    if (run->parsed()) {
      const auto cfg = load(config_file, run->remaining());
      print_result(aledg::run(cfg));
      return 0;
    }
    const auto cfg = load(config_file, converge->remaining());
    const auto rows = aledg::convergence_study(cfg, parse_resolutions(resolutions));
    const std::string table = aledg::format_convergence(rows);
    const std::string dir = aledg::output_directory(cfg);
    std::filesystem::create_directories(dir);
    const std::string path = (std::filesystem::path(dir) / "convergence.csv").string();
    std::ofstream out(path);
    if (!out) throw aledg::IoError(path + ": cannot open for writing");
    out << table;
    std::cout << table << "written to " << path << "\n";
    return 0;
  } catch (const aledg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const aledg::LookupError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const aledg::CapabilityError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const aledg::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 1;
  } catch (const aledg::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}
