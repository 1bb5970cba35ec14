// procat: command line front end. See `procat --help`.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "procat/cli.hpp"

int main(int argc, char** argv) {
  using procat::cli::Format;
  procat::cli::RunConfig cfg;
  std::size_t search_cap = 0, element_cap = 0;

  CLI::App app{"Reedy factorizations, pre-morphisms and cofinal towers over finite sets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  app.add_option("--format", cfg.format, "Report format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::json}, {"text", Format::text}}))
      ->capture_default_str();
  app.add_option("--search-cap", search_cap, "Search budget (default: $PROCAT_SEARCH_CAP or built-in)")
      ->check(CLI::PositiveNumber);
  app.add_option("--element-cap", element_cap, "Tower element cap (default: $PROCAT_ELEMENT_CAP or 10000)")
      ->check(CLI::PositiveNumber);

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.inputs, "Input JSON file, - for stdin")->required()->expected(1);
    return sub;
  };
  with_input(app.add_subcommand("reedy", "Factor a transformation as levelwise-N then special-M"));
  with_input(app.add_subcommand("chi", "Factor two arrows and, if given, build chi for a morphism between them"));
  auto* lift = with_input(app.add_subcommand("lift", "Solve a lifting problem"));
  lift->add_flag("--confirm", cfg.confirm, "Confirm every component with the brute-force oracle");
  auto* cof = with_input(app.add_subcommand("cofinalize", "Build the cofinal tower of a directed category"));
  cof->add_option("--levels,-k", cfg.levels, "Number of levels above A^0")->capture_default_str();
  cof->add_option("--reysha-cap,-m", cfg.reysha_cap, "Largest Reysha size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  with_input(app.add_subcommand("merge", "Common upper bound of two pre-morphisms"));
  with_input(app.add_subcommand("straighten", "Strict pre-morphism from raw representatives"));
  with_input(app.add_subcommand("check", "Directedness, levelwise/special or pre-morphism order verdicts"));
  auto* suite = app.add_subcommand("suite", "Randomized property suite");
  suite->add_option("--seed", cfg.seed)->capture_default_str();
  suite->add_option("--cases", cfg.cases)->capture_default_str();
  suite->add_option("--max-poset", cfg.max_poset)->capture_default_str();
  suite->add_option("--max-set", cfg.max_set)->capture_default_str();
  suite->add_option("--property", cfg.properties, "Run only these properties");
  suite->add_flag("--inject-fault", cfg.inject_fault, "Corrupt naturality in the round-trip property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : procat::cli::kParseError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (search_cap) cfg.search_cap = search_cap;
  if (element_cap) cfg.element_cap = element_cap;
  return procat::cli::run(cfg, std::cout, std::cerr);
}
