#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "annulus/ensemble.hpp"
#include "annulus/errors.hpp"
#include "annulus/experiment.hpp"
#include "annulus/fft.hpp"
#include "annulus/io.hpp"
#include "annulus/multipliers.hpp"
#include "annulus/norms.hpp"
#include "annulus/parallel.hpp"
#include "annulus/profiles.hpp"
#include "annulus/propagators.hpp"
#include "annulus/restriction.hpp"
#include "annulus/squarefn.hpp"
#include "annulus/weights.hpp"

namespace {

using annulus::Field;

int run(int argc, char** argv) {
  CLI::App app{"annulus_lab: spectral operators, square functions, weights, "
               "propagators, and scaling experiments on the periodic torus"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
  app.add_option("--seed", seed, "override the config/ensemble seed");
  app.add_option("--threads", threads,
                 "worker threads (never changes numerical output)");
  app.add_option("--out", out_path, "output path");

  // transform
  auto* transform = app.add_subcommand(
      "transform", "forward/inverse spectral transform of a stored field");
  std::string tr_input;
  bool tr_inverse = false;
  transform->add_option("--input", tr_input, "input field")->required();
  transform->add_flag("--inverse", tr_inverse,
                      "treat input values as spectral coefficients");

  // squarefn
  auto* squarefn =
      app.add_subcommand("squarefn", "square-function operators");
  std::string sq_kind = "stein", sq_input;
  double sq_alpha = 1.0, sq_delta = 0.125;
  squarefn->add_option("--kind", sq_kind, "stein | ks | local");
  squarefn->add_option("--alpha", sq_alpha, "smoothness parameter");
  squarefn->add_option("--delta", sq_delta, "annulus width (local)");
  squarefn->add_option("--input", sq_input, "input field")->required();

  // weight
  auto* weight = app.add_subcommand("weight", "maximal/weight operators");
  std::string w_kind = "hl", w_input;
  double w_q = 2.0, w_delta = 0.125, w_ecc = 0.125;
  weight->add_option("--kind", w_kind, "hl | nikodym | theorem41");
  weight->add_option("--q", w_q, "integrability exponent");
  weight->add_option("--delta", w_delta, "annulus width");
  weight->add_option("--ecc", w_ecc, "tube eccentricity (nikodym)");
  weight->add_option("--input", w_input, "input weight field")->required();

  // propagate
  auto* propagate =
      app.add_subcommand("propagate", "fractional propagator e^{it|D|^a}");
  std::string pr_input;
  double pr_a = 2.0, pr_t = 1.0;
  propagate->add_option("--a", pr_a, "order");
  propagate->add_option("--t", pr_t, "time");
  propagate->add_option("--input", pr_input, "input field")->required();

  // extension
  auto* extension = app.add_subcommand(
      "extension",
      "bilinear extension ratio for a separated pair over the paraboloid");
  double ex_b = 1.0, ex_p = 5.0, ex_L = 64.0;
  int ex_n = 256, ex_res = 64;
  extension->add_option("--b", ex_b, "omega half-width");
  extension->add_option("--p", ex_p, "product exponent");
  extension->add_option("--grid-n", ex_n, "x samples per axis");
  extension->add_option("--grid-L", ex_L, "x window length");
  extension->add_option("--omega-res", ex_res, "omega points per unit");

  // experiment run | list
  auto* experiment = app.add_subcommand("experiment", "scaling experiments");
  auto* exp_run = experiment->add_subcommand("run", "run a JSON config");
  std::string exp_config;
  exp_run->add_option("config", exp_config, "config JSON path")->required();
  auto* exp_list = experiment->add_subcommand("list", "list experiment ids");

  // report render
  auto* report = app.add_subcommand("report", "report utilities");
  auto* rep_render =
      report->add_subcommand("render", "render a report JSON as CSV/table");
  std::string rep_input;
  rep_render->add_option("report", rep_input, "report JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // flag/subcommand errors are config errors
  }

  if (threads > 0) annulus::set_thread_count(threads);

  if (*transform) {
    Field f = annulus::load_field(tr_input);
    Field out(f.grid);
    if (tr_inverse) {
      annulus::SpectralField F(f.grid);
      F.coeffs = f.values;
      out = annulus::inverse_transform(F);
    } else {
      out.values = annulus::forward_transform(f).coeffs;
    }
    if (out_path.empty())
      throw annulus::config_error("transform: --out is required");
    annulus::save_field(out, out_path);
    return 0;
  }

  if (*squarefn) {
    Field f = annulus::load_field(sq_input);
    Field out(f.grid);
    if (sq_kind == "stein") {
      out = annulus::stein_square_function(f, sq_alpha);
    } else if (sq_kind == "ks") {
      out = annulus::ks_square_function(f, sq_alpha);
    } else if (sq_kind == "local") {
      annulus::RadialProfile phi =
          annulus::bump_profile("eta_plate", annulus::BumpParams{f.grid.d});
      out = annulus::local_annulus_square(f, phi, sq_delta);
    } else {
      throw annulus::config_error("squarefn: unknown kind '" + sq_kind + "'");
    }
    if (out_path.empty())
      throw annulus::config_error("squarefn: --out is required");
    annulus::save_field(out, out_path);
    return 0;
  }

  if (*weight) {
    annulus::WeightField w(annulus::load_field(w_input));
    Field out(w.grid());
    if (w_kind == "hl") {
      out = annulus::hl_maximal(w).field;
    } else if (w_kind == "nikodym") {
      out = annulus::nikodym_maximal(w, w_ecc).field;
    } else if (w_kind == "theorem41") {
      out = annulus::theorem41_weight(w, w_q, w_delta);
    } else {
      throw annulus::config_error("weight: unknown kind '" + w_kind + "'");
    }
    if (out_path.empty())
      throw annulus::config_error("weight: --out is required");
    annulus::save_field(out, out_path);
    return 0;
  }

  if (*propagate) {
    Field f = annulus::load_field(pr_input);
    Field out = annulus::evolve(f, pr_a, pr_t);
    if (out_path.empty())
      throw annulus::config_error("propagate: --out is required");
    annulus::save_field(out, out_path);
    return 0;
  }

  if (*extension) {
    annulus::EllipticPhase phase = annulus::make_elliptic_phase(
        2, ex_b, {}, 1e-3, 0);
    annulus::GridSpec grid = annulus::make_grid(2, ex_n, ex_L);
    double sep = 0.5 * ex_b;
    auto knapp = [&](double center) {
      return [center](const std::array<double, 2>& w) {
        return annulus::cd(
            annulus::canonical_bump(8.0 * (w[0] - center)), 0.0);
      };
    };
    double ratio = annulus::bilinear_extension_ratio(
        knapp(-sep - 0.3), knapp(sep + 0.3), phase, ex_p, grid, ex_res);
    std::cout << "bilinear_extension_ratio " << ratio << "\n";
    return 0;
  }

  if (*experiment) {
    if (*exp_list) {
      for (const auto& [id, desc] : annulus::experiment_list())
        std::cout << id << "  " << desc << "\n";
      return 0;
    }
    if (*exp_run) {
      std::ifstream in(exp_config);
      if (!in) throw annulus::config_error("config not found: " + exp_config);
      nlohmann::json config = nlohmann::json::parse(in);
      if (app.count("--seed") > 0) config["seed"] = seed;
      annulus::ScalingReport rep = annulus::run_experiment(config);
      nlohmann::ordered_json out =
          annulus::report_to_json(rep, config, /*with_timestamp=*/true);
      std::string path = out_path.empty()
                             ? config.value("output", std::string("report.json"))
                             : out_path;
      std::ofstream os(path);
      if (!os)
        throw annulus::config_error("cannot open output path: " + path);
      os << out.dump(2) << "\n";
      std::cout << "slope " << rep.slope << " theory " << rep.theory_exponent
                << " residual " << rep.residual << " -> " << path << "\n";
      return 0;
    }
    throw annulus::config_error("experiment: expected 'run' or 'list'");
  }

  if (*report) {
    if (*rep_render) {
      std::ifstream in(rep_input);
      if (!in) throw annulus::config_error("report not found: " + rep_input);
      nlohmann::json rj = nlohmann::json::parse(in);
      annulus::ScalingReport rep;
      rep.sweep_name = rj.value("sweep", std::string());
      for (const auto& row : rj["rows"])
        rep.rows.push_back({row["param"].get<double>(),
                            row["value"].get<double>()});
      rep.slope = rj.value("slope", 0.0);
      rep.residual = rj.value("residual", 0.0);
      rep.theory_exponent = rj.value("theory_exponent", 0.0);
      rep.margin = rj.value("margin", 0.0);
      rep.label = rj.value("label", std::string());
      std::string csv = annulus::report_to_csv(rep);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream os(out_path);
        os << csv;
      }
      return 0;
    }
    throw annulus::config_error("report: expected 'render'");
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const annulus::guard_error& e) {
    std::cerr << "guard violation [" << e.guard_name() << "]: " << e.what()
              << "\n";
    return 3;
  } catch (const annulus::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
