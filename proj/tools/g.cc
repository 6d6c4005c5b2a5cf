#include <iostream>

#include "CLI11.hpp"
#include "g/driver/driver.h"

int main(int argc, char** argv) {
  using g::driver::ToolConfig;
  ToolConfig config;
  std::string file;

  CLI::App app{"Checker and interpreter for the G language"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "Source file")->required();
    sub->add_option("--solver-depth", config.solver_depth, "Model lookup depth limit")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--trace-solver", config.trace_solver, "Trace model lookup and overloads");
    sub->add_flag("--print-ast", config.print_ast, "Dump the syntax tree of each unit");
    sub->add_flag("--print-equalities", config.print_equalities,
                  "Print type equalities assumed in each function");
    sub->add_flag("--no-prelude", config.no_prelude, "Do not load the prelude");
    sub->add_option("-I", config.search_paths, "Add a search path for use directives");
  };
  CLI::App* check = app.add_subcommand("check", "Type check a program");
  CLI::App* run = app.add_subcommand("run", "Type check and run a program");
  add_common(check);
  add_common(run);
  run->add_option("--entry", config.entry, "Function to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*run) return g::driver::cmd_run(config, file, std::cout, std::cerr);
  return g::driver::cmd_check(config, file, std::cout, std::cerr);
}
