// kaonet command line: synth / analyze / cptest / simulate / verify / sweep,
// driven by a key/value config document.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kaonet/errors.hpp"
#include "kaonet/job.hpp"

namespace {

int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_path, bool quiet) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "kaonet: cannot open config " << config_path << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  kaonet::KeyValueDoc config;
  try {
    std::istringstream stream(buffer.str());
    config = kaonet::parse_key_values(stream);
  } catch (const kaonet::Error& e) {
    std::cerr << "kaonet: " << e.what() << "\n";
    return 2;
  }
  if (auto existing = config.find("command"); existing && *existing != command) {
    std::cerr << "kaonet: config command '" << *existing
              << "' does not match subcommand '" << command << "'\n";
    return 2;
  }
  config.set("command", command);

  kaonet::RunResult result = kaonet::run(config);
  if (out_path.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "kaonet: cannot write " << out_path << "\n";
      return 2;
    }
    out << result.report;
  }
  if (!quiet)
    std::cerr << "kaonet: " << command << (result.status == 0 ? " ok" : " failed")
              << " (status " << result.status << ")\n";
  return result.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-classical equivalence toolkit for two-state decaying "
               "systems and coupled-tank networks"};
  app.require_subcommand(1);
  app.fallthrough();

  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress the progress line");

  struct Sub {
    CLI::App* cmd = nullptr;
    std::string config;
    std::string out;
  };
  std::vector<Sub> subs(6);
  const char* names[] = {"synth", "analyze", "cptest", "simulate", "verify", "sweep"};
  for (std::size_t k = 0; k < subs.size(); ++k) {
    subs[k].cmd = app.add_subcommand(names[k]);
    subs[k].cmd->add_option("--config", subs[k].config, "config document path")->required();
    subs[k].cmd->add_option("--out", subs[k].out, "report output path (default stdout)");
  }

  CLI11_PARSE(app, argc, argv);

  for (const Sub& sub : subs)
    if (sub.cmd->parsed())
      return run_command(sub.cmd->get_name(), sub.config, sub.out, quiet);
  return 2;
}
