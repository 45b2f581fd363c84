#include "rotavg/commands.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rotavg/sampling.hpp"

namespace rotavg::cli {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::KL:
      return "kl";
    case Method::KLW:
      return "klw";
    case Method::Projected:
      return "projected";
    case Method::Geodesic:
      return "geodesic";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "kl") return Method::KL;
  if (name == "klw") return Method::KLW;
  if (name == "projected") return Method::Projected;
  if (name == "geodesic") return Method::Geodesic;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::filesystem::path sidecar_path(const std::filesystem::path& path, std::string_view suffix) {
  std::filesystem::path out = path.parent_path();
  out /= path.stem().string() + std::string(suffix);
  return out;
}

namespace {

int exit_code_for(const MethodOutcome& m) {
  if (m.status == "NonConsensus") return kExitNonConsensus;
  if (m.status == "MaxTimeExceeded") return kExitMaxTime;
  if (m.status == "failed") return kExitFailure;
  return kExitOk;
}

// Also rejects bad flow or Karcher settings, so they exit as invalid input
// rather than as a method failure.
std::optional<DatasetFile> load(const std::filesystem::path& input, const RunOptions& run, std::ostream& err) {
  try {
    run.flow.validate();
    run.karcher.validate();
    DatasetFile file = read_dataset(input, ReadOptions{run.repair});
    if (file.repaired > 0) err << "warning: repaired " << file.repaired << " record(s) onto SO(3)\n";
    return file;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
  } catch (const InvalidConfig& e) {
    err << "invalid option: " << e.what() << '\n';
  }
  return std::nullopt;
}

nlohmann::json base_metadata(std::string_view command, const std::filesystem::path& input, const DatasetFile& file,
                             const RunOptions& run) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["input"] = input.string();
  meta["n"] = file.rotations.size();
  meta["representation"] = to_string(file.representation);
  meta["weighted"] = file.has_weights;
  meta["repaired"] = file.repaired;
  meta["epsilon"] = run.flow.epsilon;
  meta["delta"] = run.flow.delta;
  meta["t_max"] = run.flow.t_max;
  meta["karcher_tolerance"] = run.karcher.tolerance;
  meta["karcher_max_iterations"] = run.karcher.max_iterations;
  meta["seed"] = run.seed ? nlohmann::json(*run.seed) : nlohmann::json(nullptr);
  meta["generator"] = Rng::kName;
  return meta;
}

MethodOutcome run_method(Method method, const WeightedDataset& data, const RunOptions& run,
                         FlowResult* flow_out = nullptr) {
  MethodOutcome outcome;
  outcome.method = std::string(to_string(method));
  try {
    switch (method) {
      case Method::KL:
      case Method::KLW: {
        FlowResult res = run_flow(data, run.flow);
        outcome.status = std::string(to_string(res.status));
        outcome.termination_time = res.termination_time;
        outcome.steps = res.steps;
        outcome.average = res.average;
        if (res.status != FlowStatus::Converged) {
          std::ostringstream os;
          os << "order parameter " << (res.trace.empty() ? order_parameter(res.final_state)
                                                          : res.trace.back().order_parameter)
             << " at t = " << res.termination_time << " did not reach 1 - epsilon";
          outcome.message = os.str();
        }
        if (flow_out != nullptr) *flow_out = std::move(res);
        break;
      }
      case Method::Projected:
        outcome.average = projected_mean(data);
        outcome.status = "ok";
        break;
      case Method::Geodesic:
        outcome.average = geodesic_mean(data, run.karcher);
        outcome.status = "ok";
        break;
    }
  } catch (const Error& e) {
    outcome.average.reset();
    outcome.status = "failed";
    outcome.message = e.what();
  }
  return outcome;
}

void emit(const Report& report, const RunOptions& run, std::ostream& out) {
  print_report(out, report);
  if (!run.report_out.empty()) write_file_atomic(run.report_out, to_json(report).dump(2) + "\n");
}

// Returns nullopt (after printing why) if the file cannot feed `method`.
std::optional<WeightedDataset> dataset_for(Method method, const DatasetFile& file, std::ostream& err) {
  if (method == Method::KLW && !file.has_weights) {
    err << "error: method klw requires a weight column\n";
    return std::nullopt;
  }
  if (method == Method::KL && file.has_weights) {
    err << "warning: method kl ignores the weight column\n";
  }
  try {
    return file.to_dataset(method != Method::KL);
  } catch (const InvalidDataset& e) {
    err << "validation error: " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int cmd_average(const AverageOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<DatasetFile> file = load(opts.input, opts.run, err);
    if (!file) return kExitInvalidInput;
    const std::optional<WeightedDataset> data = dataset_for(opts.method, *file, err);
    if (!data) return kExitInvalidInput;

    MethodOutcome outcome = run_method(opts.method, *data, opts.run);
    const int code = exit_code_for(outcome);
    if (code != kExitOk) err << outcome.method << ": " << outcome.status << ": " << outcome.message << '\n';
    emit(build_report({std::move(outcome)}, base_metadata("average", opts.input, *file, opts.run)), opts.run, out);
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<DatasetFile> file = load(opts.input, opts.run, err);
    if (!file) return kExitInvalidInput;
    const Method flow_method = file->has_weights ? Method::KLW : Method::KL;
    const std::optional<WeightedDataset> data = dataset_for(flow_method, *file, err);
    if (!data) return kExitInvalidInput;

    std::vector<MethodOutcome> outcomes;
    for (Method m : {Method::Projected, Method::Geodesic, flow_method}) {
      outcomes.push_back(run_method(m, *data, opts.run));
    }
    int code = kExitOk;
    for (const MethodOutcome& o : outcomes) {
      const int c = exit_code_for(o);
      if (c == kExitOk) continue;
      err << o.method << ": " << o.status << ": " << o.message << '\n';
      if (code == kExitOk || c > code) code = c;
    }
    emit(build_report(std::move(outcomes), base_metadata("compare", opts.input, *file, opts.run)), opts.run, out);
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.out.empty()) {
      err << "error: sample requires an output path\n";
      return kExitInvalidInput;
    }
    VmfParams params{UnitQuaternion(opts.mu), opts.kappa, opts.n, opts.seed};
    const std::uint64_t weight_seed = derive_seed(opts.seed, 1);

    std::vector<UnitQuaternion> quats = sample_vmf_s3(params);
    std::vector<double> weights;
    if (opts.weights) weights = sample_weights(opts.n, weight_seed);

    nlohmann::json meta;
    meta["generator"] = Rng::kName;
    meta["distribution"] = "von Mises-Fisher on S^3, pushed to SO(3) by the double cover";
    meta["mu"] = {params.mu.w(), params.mu.x(), params.mu.y(), params.mu.z()};
    meta["kappa"] = opts.kappa;
    meta["n"] = opts.n;
    meta["seed"] = opts.seed;
    meta["weights"] = opts.weights;
    if (opts.weights) {
      meta["weight_seed"] = weight_seed;
      meta["weight_distribution"] = "uniform [0, 1]";
    }
    meta["format"] = to_string(opts.format);

    std::ostringstream header;
    header << "rotavg sample: generator=" << Rng::kName << " kappa=" << format_double(opts.kappa)
           << " n=" << opts.n << " seed=" << opts.seed << "\n"
           << "mu=(" << format_double(params.mu.w()) << ", " << format_double(params.mu.x()) << ", "
           << format_double(params.mu.y()) << ", " << format_double(params.mu.z()) << ")";

    std::ostringstream body;
    if (opts.format == Representation::Quaternion) {
      write_dataset(body, quats, weights, header.str());
    } else {
      std::vector<Rotation> rotations;
      rotations.reserve(quats.size());
      for (const UnitQuaternion& q : quats) rotations.push_back(quat_to_rotation(q));
      write_dataset(body, rotations, weights, Representation::Matrix, header.str());
    }
    write_file_atomic(opts.out, body.str());
    const std::filesystem::path meta_path = sidecar_path(opts.out, ".meta.json");
    write_file_atomic(meta_path, meta.dump(2) + "\n");
    out << "wrote " << opts.n << " records to " << opts.out.string() << " (metadata: " << meta_path.string()
        << ")\n";
    return kExitOk;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const NonUnitQuaternion& e) {
    err << "error: mu: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_trace(const TraceOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.method != Method::KL && opts.method != Method::KLW) {
      err << "error: trace supports methods kl and klw only\n";
      return kExitInvalidInput;
    }
    if (opts.out.empty()) {
      err << "error: trace requires an output path\n";
      return kExitInvalidInput;
    }
    const std::optional<DatasetFile> file = load(opts.input, opts.run, err);
    if (!file) return kExitInvalidInput;
    const std::optional<WeightedDataset> data = dataset_for(opts.method, *file, err);
    if (!data) return kExitInvalidInput;

    RunOptions run = opts.run;
    run.flow.record_trace = true;
    FlowResult flow;
    MethodOutcome outcome = run_method(opts.method, *data, run, &flow);

    std::ostringstream trace;
    trace << "t,potential,order_parameter\n";
    for (const TracePoint& p : flow.trace) {
      trace << format_double(p.t) << ',' << format_double(p.potential) << ',' << format_double(p.order_parameter)
            << '\n';
    }
    write_file_atomic(opts.out, trace.str());

    // Average is written with member_index -1.
    std::ostringstream sphere;
    sphere << "member_index,vector_index,x,y,z\n";
    auto write_points = [&sphere](long index, const Rotation& r) {
      const auto pts = sphere_points(r);
      for (int v = 0; v < 3; ++v) {
        sphere << index << ',' << v << ',' << format_double(pts[v].x()) << ',' << format_double(pts[v].y()) << ','
               << format_double(pts[v].z()) << '\n';
      }
    };
    for (std::size_t i = 0; i < data->size(); ++i) write_points(static_cast<long>(i), data->rotation(i));
    if (outcome.average) write_points(-1, *outcome.average);
    const std::filesystem::path sphere_path = sidecar_path(opts.out, ".sphere.csv");
    write_file_atomic(sphere_path, sphere.str());

    const int code = exit_code_for(outcome);
    if (code != kExitOk) err << outcome.method << ": " << outcome.status << ": " << outcome.message << '\n';
    nlohmann::json meta = base_metadata("trace", opts.input, *file, run);
    meta["trace_file"] = opts.out.string();
    meta["sphere_file"] = sphere_path.string();
    emit(build_report({std::move(outcome)}, std::move(meta)), run, out);
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace rotavg::cli
