#include <fstream>
#include <memory>

#include <fmt/format.h>

#include "commands.hpp"
#include "sigmaflow/experiments.hpp"
#include "sigmaflow_cli/cli.hpp"
#include "sigmaflow_cli/config.hpp"
#include "sigmaflow_cli/csv.hpp"
#include "sigmaflow_cli/manifest.hpp"

namespace sigmaflow::cli {

void register_family(CLI::App& app, Io& io, int* code) {
  CLI::App* family = app.add_subcommand("family", "The explicit g_ell family on the sphere");
  family->require_subcommand(1);

  CLI::App* sweep = family->add_subcommand("sweep", "Integrals and leading-term ratios over ell");
  auto n = std::make_shared<int>(5);
  auto ells = std::make_shared<std::vector<double>>();
  auto quad = std::make_shared<int>(200);
  auto jobs = std::make_shared<int>(1);
  auto output = std::make_shared<std::string>("family.csv");
  auto manifest = std::make_shared<std::string>();
  auto hint = std::make_shared<bool>(false);
  sweep->add_option("--n", *n, "Sphere dimension (>= 5)");
  sweep->add_option("--ells", *ells, "Comma-separated increasing ell values, each > 10")
      ->required()
      ->delimiter(',');
  sweep->add_option("--quad-order", *quad, "Gauss-Legendre order per panel")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", *jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--output", *output, "Table CSV path");
  sweep->add_option("--manifest", *manifest, "Manifest path (default <output>.manifest.json)");
  sweep->add_flag("--gnuplot-hint", *hint, "Print a gnuplot command for the ratios");

  sweep->callback([&io, code, n, ells, quad, jobs, output, manifest, hint] {
    if (*n < 5) throw UsageError(fmt::format("family sweep requires n ≥ 5 (got n = {})", *n));
    if (ells->empty()) throw UsageError("--ells is empty");

    RunManifest m;
    m.command = "family sweep";
    m.arguments = io.arguments;
    m.started = utc_timestamp();
    std::string joined;
    for (double e : *ells) joined += (joined.empty() ? "" : ",") + format_number(e);
    m.config = {{"command", m.command},
                {"n", std::to_string(*n)},
                {"ells", joined},
                {"quad-order", std::to_string(*quad)}};
    m.config_hash = config_hash(m.config);

    const auto rows = asymptotic_ratios(*ells, *n, *quad, *jobs);
    {
      std::ofstream f(*output, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + *output + "'");
      CsvWriter csv(f, {"ell", "F2", "vol", "total_scalar", "F2_ratio", "vol_ratio", "scalar_ratio",
                        "quotient_vol", "quotient_scalar", "sigma1_integral"},
                    m.config_hash,
                    {"ratios are computed / leading term; total_scalar = int R dvol, "
                     "sigma1_integral = total_scalar / (2(n-1))"});
      for (const auto& r : rows) {
        const auto& p = r.point;
        csv.row({p.ell, p.F2, p.vol, p.total_scalar, r.F2_ratio, r.vol_ratio, r.scalar_ratio,
                 p.quotient_vol, p.quotient_scalar, p.sigma1_integral});
        io.out << fmt::format("ell {:<10g} F2/lead {:.6f}  vol/lead {:.6f}  scalar/lead {:.6f}\n", p.ell,
                              r.F2_ratio, r.vol_ratio, r.scalar_ratio);
      }
    }
    m.outputs.push_back(*output);

    const auto violations = check_ratio_tolerances(rows);
    for (const auto& v : violations) io.err << "tolerance violated: " << v << "\n";
    *code = violations.empty() ? kOk : kCheckFailed;
    m.status = violations.empty() ? "ok" : "tolerance violated";
    m.exit_code = *code;
    m.finished = utc_timestamp();
    write_manifest(manifest->empty() ? *output + ".manifest.json" : *manifest, m);
    if (*hint) {
      io.out << fmt::format(
          "gnuplot -p -e \"set datafile separator ','; set logscale x; set xlabel 'ell'; "
          "plot '{0}' using 1:5 with linespoints title columnheader, '' using 1:6 with linespoints "
          "title columnheader, '' using 1:7 with linespoints title columnheader\"\n",
          *output);
    }
  });
}

}  // namespace sigmaflow::cli
