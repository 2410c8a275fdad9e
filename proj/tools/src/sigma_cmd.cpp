#include <cmath>
#include <cstdlib>
#include <random>

#include <fmt/format.h>

#include "commands.hpp"
#include "sigmaflow/symfunc.hpp"
#include "sigmaflow_cli/cli.hpp"
#include "sigmaflow_cli/config.hpp"

namespace sigmaflow::cli {
namespace {

std::uint64_t seed_from_env() {
  const char* env = std::getenv("SIGMAFLOW_SEED");
  return env ? std::strtoull(env, nullptr, 10) : 0;
}

SymMatrix random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, d(rng));
  return m;
}

// Central second difference with one Richardson step.
double second_difference(const SymMatrix& w, const SymMatrix& r, double h) {
  auto central = [&](double step) {
    return (quotient_F(w + step * r, 0.0) - 2.0 * quotient_F(w, 0.0) +
            quotient_F(w - step * r, 0.0)) / (step * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace

void register_sigma(CLI::App& app, Io& io, int* code) {
  CLI::App* sigma = app.add_subcommand("sigma", "Elementary symmetric functions and the quotient operator");
  sigma->require_subcommand(1);

  CLI::App* eval = sigma->add_subcommand("eval", "Print sigma_k and Garding cone membership");
  auto lambdas = std::make_shared<std::vector<double>>();
  auto k = std::make_shared<int>(0);
  eval->add_option("--lambdas", *lambdas, "Comma-separated eigenvalues")->required()->delimiter(',');
  eval->add_option("--k", *k, "Order k")->required();
  eval->callback([&io, code, lambdas, k] {
    const EigenProfile profile(*lambdas);
    const double value = sigma_k(profile, *k);
    io.out << fmt::format("sigma_{} = {}\n", *k, value);
    if (*k >= 1) {
      io.out << fmt::format("Gamma_{}+: {}\n", *k, in_gamma_plus(profile, *k).member ? "yes" : "no");
    }
    *code = kOk;
  });

  CLI::App* check = sigma->add_subcommand(
      "check-identity", "Compare the closed-form quotient Hessian with finite differences");
  auto n = std::make_shared<int>(5);
  auto trials = std::make_shared<int>(100);
  auto tol = std::make_shared<double>(1e-5);
  check->add_option("--n", *n, "Matrix dimension")->check(CLI::Range(2, 16));
  check->add_option("--trials", *trials, "Number of random (W, R) pairs")->check(CLI::PositiveNumber);
  check->add_option("--tol", *tol, "Allowed absolute deviation");
  check->callback([&io, code, n, trials, tol] {
    std::mt19937_64 rng(seed_from_env());
    std::uniform_real_distribution<double> trace(0.5, 5.0), nus(0.01, 3.0);
    double worst = 0.0, worst_form = -INFINITY, worst_bound = -INFINITY;
    for (int t = 0; t < *trials; ++t) {
      SymMatrix w = random_symmetric(rng, *n);
      const double shift = (trace(rng) - w.trace()) / *n;
      for (int i = 0; i < *n; ++i) w.set(i, i, w(i, i) + shift);
      const SymMatrix r = random_symmetric(rng, *n);
      const double form = quotient_hessian_form(w, r);
      worst = std::max(worst, std::abs(form - second_difference(w, r, 1e-4)));
      worst_form = std::max(worst_form, form);
      const double nu = nus(rng);
      const double s1 = w.trace();
      worst_bound = std::max(worst_bound, quotient_second_derivative(w, r, nu) +
                                              2.0 * nu * r.trace() * r.trace() / (s1 * s1 * s1));
    }
    io.out << fmt::format("trials: {}\nseed: {}\n", *trials, seed_from_env());
    io.out << fmt::format("max deviation: {:.3e}\n", worst);
    io.out << fmt::format("max hessian form: {:.3e}\n", worst_form);
    io.out << fmt::format("max perturbed-bound excess: {:.3e}\n", worst_bound);
    const bool ok = worst <= *tol && worst_form <= 1e-12 && worst_bound <= 1e-10;
    io.out << (ok ? "PASS\n" : "FAIL\n");
    *code = ok ? kOk : kCheckFailed;
  });
}

}  // namespace sigmaflow::cli
