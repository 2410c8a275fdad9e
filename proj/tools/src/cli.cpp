#include "sigmaflow_cli/cli.hpp"

#include <algorithm>
#include <exception>

#include "commands.hpp"
#include "sigmaflow/errors.hpp"
#include "sigmaflow/version.hpp"
#include "sigmaflow_cli/config.hpp"

namespace sigmaflow::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sigma_2 curvature flows and sphere experiments", "sigmaflow"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough(false);

  Io io{out, err, args};
  int code = kOk;
  register_sigma(app, io, &code);
  register_flow(app, io, &code);
  register_family(app, io, &code);

  // CLI11 consumes the vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* failing = &app;
    for (CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub;
         sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front()) {
      failing = sub;
    }
    err << failing->help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return code;
}

}  // namespace sigmaflow::cli
