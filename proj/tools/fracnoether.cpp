#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fracnoether/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fractional Euler-Lagrange solver and Noether conservation-law checker"};
  app.require_subcommand(1);
  std::string config, out;
  for (const char* name : {"solve", "noether", "check"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "configuration file")->required();
    sub->add_option("--out", out, "output directory (overrides the outputs key)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fracnoether::exit_config;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return fracnoether::run_command(command, config, out, std::cerr);
}
