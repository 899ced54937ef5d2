#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ladder4/acceptance.hpp"
#include "ladder4/errata.hpp"
#include "ladder4/figures.hpp"
#include "ladder4/steady.hpp"
#include "ladder4/sweep.hpp"

namespace {

using namespace ladder4;

std::array<double, 3> parse_triple(const std::string& s, const char* what) {
  std::array<double, 3> out{};
  std::stringstream ss(s);
  std::string f;
  size_t k = 0;
  while (std::getline(ss, f, ',')) {
    if (k >= 3) throw BadSweepSpec(std::string(what) + " takes three values");
    out[k++] = parse_double(f);
  }
  if (k != 3) throw BadSweepSpec(std::string(what) + " takes three values");
  return out;
}

VaryAxis parse_range(const std::string& label, const std::string& s) {
  std::array<double, 3> v{};
  std::stringstream ss(s);
  std::string f;
  size_t k = 0;
  while (std::getline(ss, f, ':')) {
    if (k >= 3) throw BadSweepSpec("range format is start:stop:step");
    v[k++] = parse_double(f);
  }
  if (k != 3) throw BadSweepSpec("range format is start:stop:step");
  return {label, v[0], v[1], v[2]};
}

struct ParamFlags {
  std::string omega = "0,0,0";
  std::string delta = "0,0,0";
  std::string gamma = "6,1,1";
  bool rho44_literal = false;

  SystemParams build() const {
    auto w = parse_triple(omega, "--omega");
    auto d = parse_triple(delta, "--delta");
    auto g = parse_triple(gamma, "--gamma");
    SystemParams p;
    p.with_omega(w[0], w[1], w[2])
        .with_delta(d[0], d[1], d[2])
        .with_gamma(g[0], g[1], g[2]);
    p.rho44_decay_literal = rho44_literal;
    return validate_params(p);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--omega", omega, "Rabi frequencies W1,W2,W3 (units of gamma)");
    cmd->add_option("--delta", delta, "detunings D1,D2,D3");
    cmd->add_option("--gamma", gamma, "decay constants G2,G3,G4");
    cmd->add_flag("--rho44-decay-literal", rho44_literal,
                  "use the level-3 rate for rho44 decay, as printed");
  }
};

nlohmann::json rho_json(const DensityMatrix& rho) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 1; i <= 4; ++i) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (int j = 1; j <= 4; ++j) {
      rr.push_back(rho.elem(i, j).real());
      ri.push_back(rho.elem(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

int cmd_steady(const ParamFlags& flags) {
  SystemParams p = flags.build();
  SteadyStateResult r = steady_state_exact(p);
  nlohmann::json j;
  j["tool"] = kToolVersion;
  j["params"] = {{"omega", {p.omega1, p.omega2, p.omega3}},
                 {"delta", {p.delta1, p.delta2, p.delta3}},
                 {"gamma", {p.gamma2, p.gamma3, p.gamma4}},
                 {"rho44_decay_literal", p.rho44_decay_literal}};
  j["rho"] = rho_json(r.rho);
  j["residual_inf_norm"] = r.residual_inf_norm;
  j["condition_estimate"] = r.condition_estimate;
  nlohmann::json obs;
  for (const char* label : {"rho11", "rho22", "rho33", "rho44", "im_rho21",
                            "im_rho32", "im_rho43"})
    obs[label] = evaluate_observable(label, r.rho);
  j["observables"] = obs;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const ParamFlags& flags, const std::string& vary,
              const std::string& range, const std::string& vary2,
              const std::string& range2, const std::string& observable,
              const std::string& method, const std::string& out) {
  SweepSpec spec;
  spec.base = flags.build();
  spec.axes.push_back(parse_range(vary, range));
  if (!vary2.empty()) spec.axes.push_back(parse_range(vary2, range2));
  spec.observable = observable;
  spec.method = method;
  SweepResult r = run_sweep(spec);
  if (out == "-")
    write_csv(r, std::cout);
  else
    write_csv_file(r, out);
  if (size_t holes = r.hole_count())
    std::cerr << "note: " << holes << " grid point(s) flagged as holes\n";
  return 0;
}

int cmd_figure(int id, const std::string& out_dir) {
  FigureResult r = reproduce_figure(id, out_dir);
  std::cout << "figure " << id << ": " << r.files.size()
            << " data file(s) + summary -> " << out_dir << "\n";
  std::cout << r.summary.dump(2) << "\n";
  return 0;
}

int cmd_verify(int criterion, const std::string& out_dir, bool keep) {
  namespace fs = std::filesystem;
  std::random_device rd;
  fs::path work = out_dir.empty()
                      ? fs::temp_directory_path() /
                            ("ladder4-verify-" + std::to_string(rd()))
                      : fs::path(out_dir);
  if (criterion < 0 || criterion > 10)
    throw BadSweepSpec("criterion id must be in 1..10");
  fs::create_directories(work);
  std::optional<int> only;
  if (criterion != 0) only = criterion;
  auto results = run_acceptance(only, work, std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  std::cout << (all ? "verification PASSED" : "verification FAILED") << " ("
            << results.size() << " criteria)\n";
  if (out_dir.empty() && !keep) fs::remove_all(work);
  return all ? 0 : 1;
}

int cmd_erratum() {
  std::cout << format_errata(compute_errata());
  return 0;
}

// Expands `--config FILE` into flags for every key the command line does not
// already carry, so explicit flags always override the file.
std::vector<std::string> apply_config_file(const std::vector<std::string>& in) {
  std::vector<std::string> args;
  std::string config_file;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] == "--config" && i + 1 < in.size()) {
      config_file = in[++i];
    } else if (in[i].rfind("--config=", 0) == 0) {
      config_file = in[i].substr(9);
    } else {
      args.push_back(in[i]);
    }
  }
  if (config_file.empty()) return args;

  std::ifstream is(config_file);
  if (!is) throw BadSweepSpec("cannot open config file " + config_file);
  auto has_flag = [&args](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::string line;
  while (std::getline(is, line)) {
    const size_t comment = line.find('#');
    if (comment != std::string::npos) line.resize(comment);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const std::string flag = "--" + key;
    if (has_flag(flag)) continue;
    if (key == "rho44-decay-literal") {
      if (value == "1" || value == "true") args.push_back(flag);
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady states, perturbative expansions and absorption "
               "lineshapes of a three-field-driven four-level ladder atom"};
  app.require_subcommand(1);

  ParamFlags steady_flags;
  CLI::App* steady = app.add_subcommand("steady", "one-shot steady state, JSON to stdout");
  steady_flags.attach(steady);

  ParamFlags sweep_flags;
  std::string vary, range, vary2, range2, observable, method = "exact",
                                                      out = "-";
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep, CSV out");
  sweep_flags.attach(sweep);
  sweep->add_option("--vary", vary, "swept parameter (omega1..3, delta1..3)")
      ->required();
  sweep->add_option("--range", range, "start:stop:step")->required();
  sweep->add_option("--vary2", vary2, "second swept parameter");
  sweep->add_option("--range2", range2, "second range start:stop:step");
  sweep->add_option("--observable", observable,
                    "rho11..rho44, im_rho21/32/43, re/im_rhoIJ (I<J)")
      ->required();
  sweep->add_option("--method", method,
                    "exact | perturbative-order-{0,1,2} | analytic-eq{4,5,6,7}");
  sweep->add_option("--out", out, "output file ('-' for stdout)");
  std::string config_note;
  sweep->add_option("--config", config_note,
                    "flat key=value file mirroring the flags; flags override")
      ->configurable(false);

  int figure_id = 0;
  std::string figure_out = "figures";
  CLI::App* figure = app.add_subcommand("figure", "write figure data + summary");
  figure->add_option("id", figure_id, "figure id (2..12)")->required();
  figure->add_option("--out", figure_out, "output directory");

  int criterion = 0;
  std::string verify_out;
  bool keep = false;
  CLI::App* verify =
      app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--criterion", criterion, "run a single criterion (1..10)");
  verify->add_option("--out", verify_out, "working directory for figure outputs");
  verify->add_flag("--keep", keep, "keep the working directory");

  CLI::App* erratum = app.add_subcommand(
      "erratum", "print the formula-discrepancy ledger with measured residuals");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config_file(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (steady->parsed()) return cmd_steady(steady_flags);
    if (sweep->parsed())
      return cmd_sweep(sweep_flags, vary, range, vary2, range2, observable,
                       method, out);
    if (figure->parsed()) return cmd_figure(figure_id, figure_out);
    if (verify->parsed()) return cmd_verify(criterion, verify_out, keep);
    if (erratum->parsed()) return cmd_erratum();
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const BadSweepSpec& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidRabi& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDecay& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const NonFiniteParam& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
