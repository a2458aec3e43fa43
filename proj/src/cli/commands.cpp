#include "ltiframe/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltiframe/cli/system_file.hpp"
#include "ltiframe/frames.hpp"
#include "ltiframe/gramian.hpp"
#include "ltiframe/moq.hpp"

namespace ltiframe::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kUndefined = "undefined";

struct Globals {
  double tol = kGramianRankTolerance;
};

std::string number_text(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json horizon_json(const Horizon& h) {
  if (h.is_infinite()) return "inf";
  return h.value();
}

Json optional_json(const std::optional<double>& x) {
  if (x) return *x;
  return kUndefined;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector to_vector(const std::vector<double>& xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = xs[i];
  return v;
}

ReportOptions report_options(const Globals& g) {
  ReportOptions opts;
  opts.condition_limit = 1.0 / g.tol;
  return opts;
}

Horizon resolve_horizon(const SystemFile& file, const std::string& flag) {
  if (!flag.empty()) return parse_horizon(flag);
  if (file.horizon) return *file.horizon;
  throw ValueError("no horizon: pass --horizon or set \"horizon\" in the system file");
}

double finite_horizon(const Horizon& h, const char* command) {
  if (h.is_infinite()) {
    throw ValueError(std::string(command) + " needs a finite horizon");
  }
  return h.value();
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string path;
  std::string horizon;
};

int cmd_analyze(const AnalyzeArgs& args, const Globals& g, std::ostream& out) {
  const SystemFile file = read_system_file(args.path);
  const LtiSystem sys = file.system();
  const Horizon horizon = resolve_horizon(file, args.horizon);
  const MoqReport r = full_report(sys, horizon, report_options(g));

  Json doc;
  doc["dimension"] = r.dimension;
  doc["inputs"] = sys.inputs();
  doc["time_mode"] = to_string(r.mode);
  doc["horizon"] = horizon_json(r.horizon);
  doc["gramian_rank"] = r.gramian_rank;
  doc["controllable"] = r.controllable;
  doc["classical_defined"] = r.classical_defined();
  doc["trace_inverse"] = optional_json(r.trace_inverse);
  doc["min_eig_inverse"] = optional_json(r.min_eig_inverse);
  doc["determinant"] = r.determinant;
  doc["eta"] = r.eta;
  doc["tightness_ratio"] = r.tightness_ratio;
  doc["rank_lower_bound"] = r.rank_lower_bound;
  doc["spectrum"] = vector_json(r.spectrum);
  out << doc.dump(2) << "\n";
  return r.classical_defined() ? kExitOk : kExitDegenerate;
}

// ---------------------------------------------------------------------------

struct MinEnergyArgs {
  std::string path;
  std::string horizon;
  std::vector<double> target;
  int samples = 200;
  int degree = 32;
  int steps = 2000;
  bool csv = false;
};

int cmd_minenergy(const MinEnergyArgs& args, const Globals& g, std::ostream& out) {
  const SystemFile file = read_system_file(args.path);
  const LtiSystem sys = file.system();
  const double T = finite_horizon(resolve_horizon(file, args.horizon), "minenergy");
  if (args.samples < 2) throw ValueError("--samples must be at least 2");
  if (args.steps < 1) throw ValueError("--steps must be positive");
  const Vector target = to_vector(args.target);
  if (target.size() != sys.states()) {
    throw DimensionError("--target has " + std::to_string(target.size()) +
                         " entries, the system has " +
                         std::to_string(sys.states()) + " states");
  }

  MinEnergyOptions opts;
  opts.condition_limit = 1.0 / g.tol;
  const MinEnergyControl mec = min_energy_control(
      sys, T, target, build_basis(T, sys.inputs(), args.degree), opts);

  const Trajectory traj =
      simulate(sys, mec.control, Vector::Zero(sys.states()), args.steps);
  const Vector& final_state = traj.states.back();
  const double endpoint_error = (final_state - target).norm();

  const int m = sys.inputs();
  Vector times(args.samples);
  for (int k = 0; k < args.samples; ++k) {
    times[k] = (k + 1 == args.samples) ? T : T * k / (args.samples - 1);
  }
  const Matrix u = mec.control.sample(times);

  if (args.csv) {
    out << "t";
    for (int c = 1; c <= m; ++c) out << ",u" << c;
    out << "\n";
    for (int k = 0; k < args.samples; ++k) {
      out << number_text(times[k]);
      for (int c = 0; c < m; ++c) out << "," << number_text(u(c, k));
      out << "\n";
    }
    out << "# cost," << number_text(mec.cost) << "\n";
    out << "# control_energy," << number_text(mec.control.energy()) << "\n";
    out << "# endpoint_error," << number_text(endpoint_error) << "\n";
    return kExitOk;
  }

  Json doc;
  doc["horizon"] = T;
  doc["target"] = vector_json(target);
  doc["cost"] = mec.cost;
  doc["control_energy"] = mec.control.energy();
  doc["basis_degrees"] = mec.control.basis.degrees();
  Json columns = Json::array({"t"});
  for (int c = 1; c <= m; ++c) columns.push_back("u" + std::to_string(c));
  doc["columns"] = columns;
  Json table = Json::array();
  for (int k = 0; k < args.samples; ++k) {
    Json row = Json::array({times[k]});
    for (int c = 0; c < m; ++c) row.push_back(u(c, k));
    table.push_back(std::move(row));
  }
  doc["table"] = std::move(table);
  doc["verification"] = {{"steps", args.steps},
                         {"final_state", vector_json(final_state)},
                         {"endpoint_error", endpoint_error}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string path;
  double t_min = 0.0;
  double t_max = 0.0;
  int steps = 0;
  bool csv = false;
};

int cmd_sweep(const SweepArgs& args, const Globals& g, std::ostream& out) {
  const SystemFile file = read_system_file(args.path);
  const LtiSystem sys = file.system();
  if (!(args.t_min > 0.0) || !std::isfinite(args.t_max) || args.t_max < args.t_min) {
    throw ValueError("horizon range needs 0 < t-min <= t-max");
  }
  if (args.steps < 1) throw ValueError("--steps must be positive");
  if (args.steps > 1 && args.t_max == args.t_min) {
    throw ValueError("t-min equals t-max but more than one step was requested");
  }

  std::vector<double> horizons(args.steps);
  for (int k = 0; k < args.steps; ++k) {
    if (k == 0) {
      horizons[k] = args.t_min;
    } else if (k + 1 == args.steps) {
      horizons[k] = args.t_max;
    } else {
      horizons[k] = args.t_min + (args.t_max - args.t_min) * k / (args.steps - 1);
    }
  }

  const ReportOptions opts = report_options(g);
  const bool controllable = is_controllable(sys, opts.kalman_tol);
  std::vector<std::optional<MoqReport>> rows(args.steps);
  kernels::for_each_index(args.steps, Execution::parallel, [&](Eigen::Index k) {
    const Gramian gram = controllability_gramian(sys, Horizon::finite(horizons[k]));
    rows[k] = report_from_gramian(gram, controllable, opts);
  });

  bool degenerate = false;
  for (const auto& r : rows) degenerate = degenerate || !r->classical_defined();

  static const char* const kColumns[] = {"T", "eta", "trace_inverse",
                                         "min_eig_inverse", "determinant",
                                         "gramian_rank"};
  if (args.csv) {
    for (int c = 0; c < 6; ++c) out << (c ? "," : "") << kColumns[c];
    out << "\n";
    auto opt_text = [](const std::optional<double>& x) {
      return x ? number_text(*x) : std::string(kUndefined);
    };
    for (int k = 0; k < args.steps; ++k) {
      const MoqReport& r = *rows[k];
      out << number_text(horizons[k]) << "," << number_text(r.eta) << ","
          << opt_text(r.trace_inverse) << "," << opt_text(r.min_eig_inverse) << ","
          << number_text(r.determinant) << "," << r.gramian_rank << "\n";
    }
  } else {
    Json doc;
    doc["columns"] = Json::array();
    for (const char* c : kColumns) doc["columns"].push_back(c);
    Json table = Json::array();
    for (int k = 0; k < args.steps; ++k) {
      const MoqReport& r = *rows[k];
      table.push_back(Json::array({horizons[k], r.eta, optional_json(r.trace_inverse),
                                   optional_json(r.min_eig_inverse), r.determinant,
                                   r.gramian_rank}));
    }
    doc["rows"] = std::move(table);
    out << doc.dump(2) << "\n";
  }
  return degenerate ? kExitDegenerate : kExitOk;
}

// ---------------------------------------------------------------------------

struct SelectArgs {
  std::string path;
  std::string candidates;
  std::string horizon;
  int k = 0;
};

int cmd_select(const SelectArgs& args, const Globals& g, std::ostream& out) {
  const SystemFile file = read_system_file(args.path, /*require_b=*/false);
  const Horizon horizon = resolve_horizon(file, args.horizon);
  const std::vector<Vector> candidates = read_candidates(args.candidates);
  const ActuatorSelection sel =
      select_actuators(file.a, candidates, args.k, horizon, file.mode);

  const int n = static_cast<int>(file.a.rows());
  int rank = 0;
  if (!sel.order.empty()) {
    Matrix b(n, static_cast<Eigen::Index>(sel.order.size()));
    for (std::size_t j = 0; j < sel.order.size(); ++j) b.col(j) = candidates[sel.order[j]];
    rank = controllability_gramian(LtiSystem(file.a, b, file.mode), horizon).rank(g.tol);
  }

  Json doc;
  doc["dimension"] = n;
  doc["horizon"] = horizon_json(horizon);
  doc["k"] = args.k;
  Json listing = Json::array();
  for (std::size_t j = 0; j < sel.order.size(); ++j) {
    listing.push_back({{"index", sel.order[j]}, {"eta", sel.eta[j]}});
  }
  doc["selection"] = std::move(listing);
  doc["gramian_rank"] = rank;
  out << doc.dump(2) << "\n";
  return (args.k > 0 && rank < n) ? kExitDegenerate : kExitOk;
}

// ---------------------------------------------------------------------------

struct FrameArgs {
  std::string path;
  std::string horizon;
  int degree = 32;
  bool allow_truncated = false;
};

int cmd_frame(const FrameArgs& args, const Globals& g, std::ostream& out) {
  const SystemFile file = read_system_file(args.path);
  const LtiSystem sys = file.system();
  const double T = finite_horizon(resolve_horizon(file, args.horizon), "frame");
  const GeneratedFrame frame =
      generate_frame(sys, T, build_basis(T, sys.inputs(), args.degree));
  const double max_tail = args.allow_truncated
                              ? std::numeric_limits<double>::infinity()
                              : kMaxRelativeTail;

  const Matrix s = frame_operator(frame, Execution::parallel, max_tail);
  const FrameBounds bounds = frame_bounds(frame, Execution::parallel, max_tail);
  const bool is_frame = spans_space(bounds, g.tol);
  const Matrix gram = finite_horizon_gramian(sys, T).matrix();
  const double eta = frame_theoretic_moq(s);

  Json doc;
  doc["N"] = frame.size();
  doc["dimension"] = frame.dimension();
  doc["horizon"] = T;
  doc["lower_bound"] = bounds.lower;
  doc["upper_bound"] = bounds.upper;
  doc["is_frame"] = is_frame;
  doc["status"] = is_frame ? "frame" : "not a frame";
  doc["bound_ratio"] = bounds.lower / bounds.upper;
  doc["tightness_ratio"] = eta / std::sqrt(static_cast<double>(frame.dimension()));
  doc["nfp"] = nfp(frame, Execution::parallel, max_tail);
  doc["tail_bound"] = frame.tail_bound();
  doc["total_energy"] = frame.total_energy();
  doc["operator_gap"] = (s - gram).norm();
  out << doc.dump(2) << "\n";
  return is_frame ? kExitOk : kExitDegenerate;
}

// ---------------------------------------------------------------------------

struct SpectraArgs {
  std::vector<double> alpha;
  int n = 0;
  int count = 10;
  std::uint64_t seed = 0;
  int transfers = 50;
};

Json spectrum_json(const Vector& lambda) {
  Json j;
  j["spectrum"] = vector_json(lambda);
  j["trace_inverse"] = lambda.cwiseInverse().sum();
  j["min_eig_inverse"] = 1.0 / lambda.minCoeff();
  j["determinant"] = lambda.prod();
  return j;
}

int cmd_spectra(const SpectraArgs& args, std::ostream& out) {
  const Vector alpha = to_vector(args.alpha);
  check_norm_sequence(alpha, args.n);
  if (args.count < 0) throw ValueError("--count must be nonnegative");
  SamplerOptions opts;
  opts.transfers = args.transfers;
  std::mt19937_64 rng(args.seed);

  const double mean = alpha.sum() / args.n;
  Json doc;
  doc["n"] = args.n;
  doc["alpha_mean"] = mean;
  doc["seed"] = args.seed;
  doc["flat"] = spectrum_json(Vector::Constant(args.n, mean));
  Json samples = Json::array();
  for (int i = 0; i < args.count; ++i) {
    samples.push_back(spectrum_json(sample_feasible_spectrum(alpha, args.n, rng, opts)));
  }
  doc["samples"] = std::move(samples);
  out << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controllability Gramians, measures of quality and system frames"};
  app.name(args.empty() ? "ltiframe" : args.front());
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--tol", globals.tol,
                 "Relative eigenvalue tolerance for Gramian rank and inversion")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 1.0));

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Report every measure of quality");
  c_analyze->add_option("system", analyze.path, "System file")->required();
  c_analyze->add_option("--horizon", analyze.horizon, "Horizon T or \"inf\"");

  MinEnergyArgs minenergy;
  auto* c_min = app.add_subcommand("minenergy", "Minimum-energy control to a target");
  c_min->add_option("system", minenergy.path, "System file")->required();
  c_min->add_option("--target", minenergy.target, "Target state, comma separated")
      ->required()
      ->delimiter(',');
  c_min->add_option("--horizon", minenergy.horizon, "Horizon T");
  c_min->add_option("--samples", minenergy.samples, "Rows in the control table")
      ->capture_default_str();
  c_min->add_option("--degree", minenergy.degree, "Initial basis degrees per channel")
      ->capture_default_str();
  c_min->add_option("--steps", minenergy.steps, "RK4 steps for the verification run")
      ->capture_default_str();
  c_min->add_flag("--csv", minenergy.csv, "Comma-separated output");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Measures of quality over a range of horizons");
  c_sweep->add_option("system", sweep.path, "System file")->required();
  c_sweep->add_option("--t-min", sweep.t_min, "Smallest horizon")->required();
  c_sweep->add_option("--t-max", sweep.t_max, "Largest horizon")->required();
  c_sweep->add_option("--steps", sweep.steps, "Number of horizons")->required();
  c_sweep->add_flag("--csv", sweep.csv, "Comma-separated output");

  SelectArgs select;
  auto* c_select = app.add_subcommand("select", "Greedy actuator selection by eta");
  c_select->add_option("system", select.path, "System file (A required, B ignored)")
      ->required();
  c_select->add_option("--candidates", select.candidates, "Candidate columns file")
      ->required();
  c_select->add_option("--k", select.k, "Number of actuators")->required();
  c_select->add_option("--horizon", select.horizon, "Horizon T or \"inf\"");

  FrameArgs frame;
  auto* c_frame = app.add_subcommand("frame", "Inspect the frame generated by the system");
  c_frame->add_option("system", frame.path, "System file")->required();
  c_frame->add_option("--horizon", frame.horizon, "Horizon T");
  c_frame->add_option("--degree", frame.degree, "Basis degrees per channel")
      ->capture_default_str();
  c_frame->add_flag("--allow-truncated", frame.allow_truncated,
                    "Report even when the truncation tail is large");

  SpectraArgs spectra;
  auto* c_spectra = app.add_subcommand(
      "spectra", "Sample spectra majorizing a norm sequence and their measures");
  c_spectra->add_option("--alpha", spectra.alpha, "Norm sequence, comma separated")
      ->required()
      ->delimiter(',');
  c_spectra->add_option("--n", spectra.n, "Dimension")->required();
  c_spectra->add_option("--count", spectra.count, "Number of samples")
      ->capture_default_str();
  c_spectra->add_option("--seed", spectra.seed, "Generator seed")->capture_default_str();
  c_spectra->add_option("--transfers", spectra.transfers,
                        "Random transfers per sample")
      ->capture_default_str();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(),
                                args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*c_analyze) return cmd_analyze(analyze, globals, out);
    if (*c_min) return cmd_minenergy(minenergy, globals, out);
    if (*c_sweep) return cmd_sweep(sweep, globals, out);
    if (*c_select) return cmd_select(select, globals, out);
    if (*c_frame) return cmd_frame(frame, globals, out);
    if (*c_spectra) return cmd_spectra(spectra, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ltiframe::cli
