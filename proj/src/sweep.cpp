#include "ladder4/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ladder4/errors.hpp"
#include "ladder4/perturb.hpp"

namespace ladder4 {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw BadSweepSpec("malformed number: '" + s + "'");
  return v;
}

std::vector<double> VaryAxis::grid() const {
  if (!(step > 0.0)) throw BadSweepSpec("sweep step must be > 0");
  if (!(start < stop)) throw BadSweepSpec("sweep start must be < stop");
  const long n = 1 + static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> g(n);
  for (long k = 0; k < n; ++k) g[k] = start + k * step;
  return g;
}

namespace {

double* param_slot(SystemParams& p, const std::string& label) {
  if (label == "omega1") return &p.omega1;
  if (label == "omega2") return &p.omega2;
  if (label == "omega3") return &p.omega3;
  if (label == "delta1") return &p.delta1;
  if (label == "delta2") return &p.delta2;
  if (label == "delta3") return &p.delta3;
  return nullptr;
}

double analytic_point(const SweepSpec& spec, const SystemParams& p) {
  const std::string& m = spec.method;
  if (m == "analytic-eq4") return weak_omega1_first_order(p).im_rho21;
  const double grid1[1] = {p.delta1};
  const double grid3[1] = {p.delta3};
  if (m == "analytic-eq5") return doublet_eq5(p, grid1).values[0];
  if (m == "analytic-eq6") return three_peak_eq6(p, grid1).values[0];
  if (m == "analytic-eq7") return lorentzian_eq7(p, grid3).values[0];
  throw BadSweepSpec("unknown method: " + m);
}

double evaluate_point(const SweepSpec& spec, const SystemParams& p) {
  const std::string& m = spec.method;
  if (m == "exact")
    return evaluate_observable(spec.observable, steady_state_exact(p).rho);
  if (m == "perturbative-order-0")
    return evaluate_observable(spec.observable, weak_omega2_order0(p).total);
  if (m == "perturbative-order-1")
    return evaluate_observable(spec.observable,
                               weak_omega2_order1_coherences(p).total);
  if (m == "perturbative-order-2")
    return evaluate_observable(spec.observable, weak_omega2_order2(p).total);
  return analytic_point(spec, p);
}

void validate_spec(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw BadSweepSpec("a sweep varies one or two parameters");
  SystemParams tmp = spec.base;
  for (const auto& ax : spec.axes)
    if (!param_slot(tmp, ax.label))
      throw BadSweepSpec("unknown sweep parameter: " + ax.label);
  if (!observable_is_valid(spec.observable))
    throw BadSweepSpec("unknown observable: " + spec.observable);
  static const std::vector<std::string> methods = {
      "exact",        "perturbative-order-0", "perturbative-order-1",
      "perturbative-order-2", "analytic-eq4", "analytic-eq5",
      "analytic-eq6", "analytic-eq7"};
  if (std::find(methods.begin(), methods.end(), spec.method) == methods.end())
    throw BadSweepSpec("unknown method: " + spec.method);
  if (spec.method.rfind("analytic-", 0) == 0 && spec.observable != "im_rho21")
    throw BadSweepSpec("analytic lineshapes provide im_rho21 only");
}

}  // namespace

double evaluate_observable(const std::string& label, const DensityMatrix& rho) {
  if (label.rfind("rho", 0) == 0 && label.size() == 5) {
    int i = label[3] - '0', j = label[4] - '0';
    if (i == j && i >= 1 && i <= 4) return rho.population(i);
  }
  // Absorption observables: positive at steady state.
  if (label == "im_rho21") return rho.elem(1, 2).imag();
  if (label == "im_rho32") return rho.elem(2, 3).imag();
  if (label == "im_rho43") return rho.elem(3, 4).imag();
  // Literal upper-triangle parts.
  if ((label.rfind("re_rho", 0) == 0 || label.rfind("im_rho", 0) == 0) &&
      label.size() == 8) {
    int i = label[6] - '0', j = label[7] - '0';
    if (i >= 1 && j > i && j <= 4) {
      cplx v = rho.elem(i, j);
      return label[0] == 'r' ? v.real() : v.imag();
    }
  }
  throw BadSweepSpec("unknown observable: " + label);
}

bool observable_is_valid(const std::string& label) {
  try {
    evaluate_observable(label, DensityMatrix());
  } catch (const BadSweepSpec&) {
    return false;
  }
  return true;
}

unsigned sweep_thread_count() {
  if (const char* env = std::getenv("LADDER4_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  const unsigned workers = std::min<size_t>(sweep_thread_count(), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto drain = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate_params(spec.base);
  validate_spec(spec);

  SweepResult r;
  r.spec = spec;
  for (const auto& ax : spec.axes) r.axis_grids.push_back(ax.grid());
  const size_t n0 = r.axis_grids[0].size();
  const size_t n1 = r.axis_grids.size() == 2 ? r.axis_grids[1].size() : 1;
  r.samples.resize(n0 * n1);

  parallel_for(n0 * n1, [&](size_t flat) {
    SystemParams p = spec.base;
    *param_slot(p, spec.axes[0].label) = r.axis_grids[0][flat / n1];
    if (r.axis_grids.size() == 2)
      *param_slot(p, spec.axes[1].label) = r.axis_grids[1][flat % n1];
    SweepSample& s = r.samples[flat];
    try {
      s.value = evaluate_point(spec, p);
      s.ok = true;
    } catch (const Error& e) {
      s.ok = false;
      s.error = e.code();
    }
  });
  return r;
}

bool SweepResult::all_ok() const {
  for (const auto& s : samples)
    if (!s.ok) return false;
  return true;
}

size_t SweepResult::hole_count() const {
  size_t n = 0;
  for (const auto& s : samples) n += !s.ok;
  return n;
}

AbsorptionProfile SweepResult::to_profile() const {
  if (axis_grids.size() != 1)
    throw PreconditionError("to_profile applies to one-dimensional sweeps");
  if (!all_ok())
    throw PreconditionError("sweep contains holes; no complete profile");
  std::vector<double> vals(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) vals[i] = samples[i].value;
  return AbsorptionProfile(spec.axes[0].label, axis_grids[0], std::move(vals),
                           spec.method == "exact" ? "exact-numeric"
                           : spec.method.rfind("analytic-", 0) == 0
                               ? spec.method.substr(9)
                               : "perturbative");
}

void write_csv(const SweepResult& r, std::ostream& os) {
  const SystemParams& b = r.spec.base;
  os << "# " << kToolVersion << "\n";
  os << "# method=" << r.spec.method << " observable=" << r.spec.observable
     << "\n";
  os << "# omega=" << format_double(b.omega1) << "," << format_double(b.omega2)
     << "," << format_double(b.omega3) << " delta=" << format_double(b.delta1)
     << "," << format_double(b.delta2) << "," << format_double(b.delta3)
     << " gamma=" << format_double(b.gamma2) << "," << format_double(b.gamma3)
     << "," << format_double(b.gamma4)
     << " rho44_decay_literal=" << (b.rho44_decay_literal ? 1 : 0) << "\n";
  for (size_t a = 0; a < r.spec.axes.size(); ++a) {
    const auto& ax = r.spec.axes[a];
    os << "# vary" << (a ? "2" : "") << " " << ax.label
       << ": start=" << format_double(ax.start)
       << " stop=" << format_double(ax.stop)
       << " step=" << format_double(ax.step) << " n=" << r.axis_grids[a].size()
       << "\n";
  }
  for (const auto& ax : r.spec.axes) os << ax.label << ",";
  os << r.spec.observable << ",status\n";

  const size_t n1 = r.axis_grids.size() == 2 ? r.axis_grids[1].size() : 1;
  for (size_t flat = 0; flat < r.samples.size(); ++flat) {
    os << format_double(r.axis_grids[0][flat / n1]) << ",";
    if (r.axis_grids.size() == 2)
      os << format_double(r.axis_grids[1][flat % n1]) << ",";
    const SweepSample& s = r.samples[flat];
    if (s.ok)
      os << format_double(s.value) << ",ok\n";
    else
      os << "nan," << s.error << "\n";
  }
}

void write_csv_file(const SweepResult& r, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw Error("IoError", "cannot open " + file.string());
  write_csv(r, os);
}

CsvData read_csv_file(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw Error("IoError", "cannot open " + file.string());
  CsvData d;
  std::string line;
  bool header_done = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!header_done) {
      d.header = fields;
      d.columns.resize(fields.size() - 1);
      header_done = true;
      continue;
    }
    if (fields.size() != d.header.size())
      throw Error("IoError", "ragged CSV row in " + file.string());
    d.ok.push_back(fields.back() == "ok");
    for (size_t c = 0; c + 1 < fields.size(); ++c)
      d.columns[c].push_back(parse_double(fields[c]));
  }
  return d;
}

}  // namespace ladder4
