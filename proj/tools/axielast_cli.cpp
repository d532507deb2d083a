#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axielast/harness.hpp"
#include "table_format.hpp"

using axielast::format_csv;
using axielast::format_markdown;

int main(int argc, char** argv) {
  CLI::App app{"Meridian-domain mixed solver for axisymmetric elasticity: "
               "runs mesh-refinement studies and prints error/rate tables"};

  int experiment = 1, degree = 1, quad_bump = 0;
  std::vector<int> ns = {4, 6, 8, 10, 12};
  double mu = 0.5, lambda = 1.0, gamma = 1.0;
  std::string diagonal = "north-east", format = "csv", out_path;

  app.add_option("--experiment", experiment, "Manufactured experiment (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  app.add_option("--degree", degree, "Element degree k (1, 2 or 3)")
      ->check(CLI::IsMember({1, 2, 3}));
  app.add_option("--n", ns, "Comma-separated grid resolutions")->delimiter(',');
  app.add_option("--gamma", gamma, "Grad-div stabilization weight");
  app.add_option("--mu", mu, "Lame shear modulus");
  app.add_option("--lambda", lambda, "Lame constant lambda");
  app.add_option("--diagonal", diagonal, "Cell split direction")
      ->check(CLI::IsMember({"north-east", "north-west"}));
  app.add_option("--quad-bump", quad_bump, "Extra quadrature exactness")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--out", out_path, "Write the table to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  axielast::MaterialParams params;
  params.mu = mu;
  params.lambda = lambda;
  params.gamma = gamma;

  axielast::ErrorReport report;
  try {
    params.validate();
    const axielast::ManufacturedCase mc = axielast::manufactured_case(experiment, params);
    const axielast::Diagonal diag = diagonal == "north-west" ? axielast::Diagonal::north_west
                                                             : axielast::Diagonal::north_east;
    report = axielast::convergence_study(mc, degree, ns, params, diag, quad_bump);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string table = format == "markdown" ? format_markdown(report) : format_csv(report);
  if (out_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return 1;
    }
    os << table;
  }
  if (report.aborted) {
    std::cerr << "error: study aborted: " << report.error << "\n";
    return 2;
  }
  return 0;
}
