/* Copyright 2026 The ptdp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ptdp/cli.h"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "ptdp/costs.h"
#include "ptdp/errors.h"
#include "ptdp/json_io.h"
#include "ptdp/model.h"
#include "ptdp/planner.h"
#include "ptdp/render.h"
#include "ptdp/schedule.h"

namespace ptdp {

namespace {

// Six significant digits everywhere so that golden outputs are diff-stable.
std::string G(double x) { return fmt::format("{:.6g}", x); }

class Style {
 public:
  explicit Style(bool enabled) : enabled_(enabled) {}
  std::string Bold(const std::string& s) const { return Wrap("1", s); }
  std::string Red(const std::string& s) const { return Wrap("31", s); }
  std::string Green(const std::string& s) const { return Wrap("32", s); }

 private:
  std::string Wrap(const char* code, const std::string& s) const {
    if (!enabled_) return s;
    return fmt::format("\x1b[{}m{}\x1b[0m", code, s);
  }
  bool enabled_;
};

struct CommonFlags {
  std::string model_path;
  std::string hardware_path;
  std::string preset = "selene";
  std::string out_dir = ".";
  std::string format = "table";
  bool svg = false;
};

struct ParallelFlags {
  std::string parallel_path;
  std::int64_t p = 1, t = 1, d = 1, b = 1, v = 1;
  std::string schedule = "1f1b";
  bool scatter_gather = false;
  bool recompute = false;
  bool no_recompute = false;
  bool zero_comm = false;
  std::int64_t global_batch = 0;
  CLI::Option* p_opt = nullptr;
  CLI::Option* t_opt = nullptr;
  CLI::Option* d_opt = nullptr;
  CLI::Option* b_opt = nullptr;
  CLI::Option* v_opt = nullptr;
  CLI::Option* schedule_opt = nullptr;
};

void AddCommon(CLI::App* cmd, CommonFlags& f, bool with_model = true) {
  if (with_model) {
    cmd->add_option("--model", f.model_path, "model JSON file")->required();
  }
  auto* hw = cmd->add_option("--hardware", f.hardware_path,
                             "hardware JSON file");
  cmd->add_option("--preset", f.preset, "hardware preset name")
      ->excludes(hw);
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
}

void AddParallel(CLI::App* cmd, ParallelFlags& f) {
  cmd->add_option("--parallel", f.parallel_path, "parallel config JSON file");
  f.p_opt = cmd->add_option("--p", f.p, "pipeline-parallel size");
  f.t_opt = cmd->add_option("--t", f.t, "tensor-parallel size");
  f.d_opt = cmd->add_option("--d", f.d, "data-parallel size");
  f.b_opt = cmd->add_option("--b", f.b, "microbatch size");
  f.v_opt = cmd->add_option("--v", f.v, "model chunks per device");
  f.schedule_opt =
      cmd->add_option("--schedule", f.schedule, "gpipe | 1f1b | interleaved")
          ->check(CLI::IsMember({"gpipe", "1f1b", "interleaved"}));
  cmd->add_flag("--scatter-gather", f.scatter_gather,
                "scatter/gather pipeline transfers");
  auto* on = cmd->add_flag("--recompute", f.recompute,
                           "activation recomputation on (default)");
  cmd->add_flag("--no-recompute", f.no_recompute,
                "activation recomputation off")
      ->excludes(on);
  cmd->add_flag("--zero-comm", f.zero_comm, "ignore communication time");
}

HardwareSpec LoadHardware(const CommonFlags& f) {
  if (!f.hardware_path.empty()) {
    return HardwareFromJson(LoadJsonFile(f.hardware_path));
  }
  return HardwarePreset(f.preset);
}

ModelSpec LoadModel(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw ParseError("model file '" + path + "' does not exist");
  }
  return ModelFromJson(LoadJsonFile(path));
}

ParallelConfig BuildConfig(const ParallelFlags& f) {
  ParallelConfig c;
  if (!f.parallel_path.empty()) {
    c = ParallelConfigFromJson(LoadJsonFile(f.parallel_path));
  }
  if (f.p_opt->count() || f.parallel_path.empty()) c.pipeline_size = f.p;
  if (f.t_opt->count() || f.parallel_path.empty()) c.tensor_size = f.t;
  if (f.d_opt->count() || f.parallel_path.empty()) c.data_size = f.d;
  if (f.b_opt->count() || f.parallel_path.empty()) c.microbatch_size = f.b;
  if (f.v_opt->count() || f.parallel_path.empty()) c.chunks_per_device = f.v;
  if (f.schedule_opt->count() || f.parallel_path.empty()) {
    c.schedule = *ParseScheduleKind(f.schedule);
  }
  if (f.scatter_gather) c.scatter_gather = true;
  if (f.recompute) c.activation_recompute = true;
  if (f.no_recompute) c.activation_recompute = false;
  return c;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? std::filesystem::path(".")
                                          : path.parent_path());
  std::ofstream os(path);
  if (!os) throw ParseError("cannot write '" + path.string() + "'");
  os << text;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateFlags {
  CommonFlags common;
  std::int64_t global_batch = 1;
  double tokens = 0;
  double devices = 0;
  double throughput = 0;
  double params = 0;
  bool no_recompute = false;
};

int CmdEstimate(const EstimateFlags& f, std::ostream& out) {
  const ModelSpec model = LoadModel(f.common.model_path);
  const HardwareSpec hw = LoadHardware(f.common);
  const bool recompute = !f.no_recompute;
  const std::int64_t params = ParamCount(model);
  const double flops = FlopsPerIteration(model, f.global_batch, recompute);
  const FlopBreakdown br = ComputeFlopBreakdown(model, f.global_batch, recompute);

  std::optional<double> seconds;
  const double x = f.throughput > 0 ? f.throughput : hw.SustainedFlops();
  const double p_used = f.params > 0 ? f.params : static_cast<double>(params);
  if (f.tokens > 0 && f.devices > 0) {
    seconds = TrainingTimeEstimate(p_used, f.tokens, f.devices, x);
  }

  if (f.common.format == "json") {
    json j = {{"model", ToJson(model)},
              {"parameters", params},
              {"global_batch", f.global_batch},
              {"activation_recompute", recompute},
              {"flops_per_iteration", flops},
              {"breakdown",
               {{"qkv_transform", br.qkv_transform},
                {"attention_matrix", br.attention_matrix},
                {"attention_over_values", br.attention_over_values},
                {"post_attention_projection", br.post_attention_projection},
                {"feed_forward", br.feed_forward},
                {"layer_forward", br.LayerForward()},
                {"pass_factor", br.pass_factor},
                {"transformer_total", br.TransformerTotal()},
                {"logit_layer", br.logit_layer},
                {"total", br.Total()}}}};
    if (seconds) {
      j["training_time"] = {{"params", p_used},
                            {"tokens", f.tokens},
                            {"devices", f.devices},
                            {"flops_per_device", x},
                            {"seconds", *seconds},
                            {"days", *seconds / kSecondsPerDay}};
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (f.common.format == "csv") {
    out << "quantity,value\n";
    out << "parameters," << params << "\n";
    out << "flops_per_iteration," << G(flops) << "\n";
    if (seconds) {
      out << "training_time_seconds," << G(*seconds) << "\n";
      out << "training_time_days," << G(*seconds / kSecondsPerDay) << "\n";
    }
    return kExitOk;
  }
  out << "parameters:                " << params << " (" << G(params / 1e9)
      << " B)\n";
  out << "flops_per_iteration:       " << G(flops) << " (B=" << f.global_batch
      << (recompute ? ", with recompute" : ", no recompute") << ")\n";
  out << "  per-layer forward terms:\n";
  out << "    qkv_transform            " << G(br.qkv_transform) << "\n";
  out << "    attention_matrix         " << G(br.attention_matrix) << "\n";
  out << "    attention_over_values    " << G(br.attention_over_values) << "\n";
  out << "    post_attention_proj      " << G(br.post_attention_projection)
      << "\n";
  out << "    feed_forward             " << G(br.feed_forward) << "\n";
  out << "  transformer total (x" << br.pass_factor << " x " << br.layers
      << " layers): " << G(br.TransformerTotal()) << "\n";
  out << "  logit layer:               " << G(br.logit_layer) << "\n";
  if (seconds) {
    const double days = *seconds / kSecondsPerDay;
    out << "training_time_seconds:     " << G(*seconds) << "\n";
    out << "training_time_days:        " << G(days) << " (~"
        << static_cast<long long>(days + 0.5) << " days)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateFlags {
  CommonFlags common;
  ParallelFlags parallel;
  std::int64_t batches = 1;
};

int CmdSimulate(const SimulateFlags& f, std::ostream& out, const Style& style) {
  const ModelSpec model = LoadModel(f.common.model_path);
  const HardwareSpec hw = LoadHardware(f.common);
  const ParallelConfig config = BuildConfig(f.parallel);
  const TrainingJob job{f.parallel.global_batch, 0, std::nullopt};
  const DerivedQuantities q = ValidateOrThrow(config, model, job, std::nullopt);
  const RankMapping mapping =
      DefaultMapping(config.pipeline_size, config.tensor_size,
                     config.data_size, hw, /*allow_cross_node_tensor=*/true);
  const CostKnobs knobs;
  const TaskDurations durations =
      ComputeTaskDurations(model, config, hw, knobs);
  const StaticSchedule schedule = BuildSchedule(
      config.schedule, config.pipeline_size, q.microbatches,
      config.chunks_per_device);
  Timeline tl = Simulate(
      schedule, durations,
      CommModel{ComputeCommVolumes(model, config, mapping, knobs), hw, mapping,
                f.parallel.zero_comm});
  if (f.batches > 1) tl = Concatenate(tl, f.batches);

  const auto violations = ValidateTimeline(tl, schedule);
  const BubbleStats bubble = ComputeBubble(tl);
  const auto peaks = PeakInflight(tl);
  const MemoryFootprint memory = ComputeMemoryFootprint(
      model, config, job, knobs, hw.memory_capacity,
      *std::max_element(peaks.begin(), peaks.end()));
  double intra = 0, inter = 0;
  for (const auto& e : tl.comm) {
    (e.link == LinkClass::kIntraNode ? intra : inter) += e.volume;
  }

  const std::filesystem::path dir(f.common.out_dir);
  WriteFile(dir / "timeline.json", ToJson(tl).dump(1) + "\n");
  if (f.common.svg) WriteFile(dir / "timeline.svg", RenderTimelineSvg(tl));

  if (f.common.format == "json") {
    json j = {{"config", ToJson(config)},
              {"microbatches", q.microbatches},
              {"span_seconds", tl.span},
              {"bubble_fraction", bubble.bubble_fraction},
              {"idle_fraction", bubble.idle_fraction},
              {"peak_inflight", peaks},
              {"comm_intra_node_bytes", intra},
              {"comm_inter_node_bytes", inter},
              {"memory", ToJson(memory)},
              {"violations", violations.size()}};
    out << j.dump(2) << "\n";
  } else {
    out << "config:          " << Describe(config) << "\n";
    out << "microbatches:    " << q.microbatches << "\n";
    out << "span_seconds:    " << G(tl.span) << "\n";
    out << "bubble_fraction: " << G(bubble.bubble_fraction) << "\n";
    out << "idle_fraction:   " << G(bubble.idle_fraction) << "\n";
    out << "peak_inflight:  ";
    for (auto pk : peaks) out << " " << pk;
    out << "\n";
    out << "comm_bytes:      intra_node " << G(intra) << ", inter_node "
        << G(inter) << "\n";
    out << "memory_gb:       " << G(memory.total_bytes / 1e9)
        << (memory.out_of_memory ? style.Red(" (exceeds capacity)") : "")
        << "\n";
    out << "violations:      "
        << (violations.empty() ? style.Green("0")
                               : style.Red(std::to_string(violations.size())))
        << "\n";
  }
  return violations.empty() ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// plan

struct PlanFlags {
  CommonFlags common;
  std::string query_path;
  std::int64_t top = 10;
  bool explain = false;
  bool simulate = false;
  unsigned threads = 0;
};

int CmdPlan(const PlanFlags& f, std::ostream& out, std::ostream& err,
            const Style& style) {
  const std::string base =
      std::filesystem::path(f.query_path).parent_path().string();
  PlanQuery query = PlanQueryFromJson(LoadJsonFile(f.query_path), base);
  if (!f.common.model_path.empty()) query.model = LoadModel(f.common.model_path);
  if (!f.common.hardware_path.empty()) query.hardware = LoadHardware(f.common);
  if (f.simulate) query.use_simulator = true;
  query.threads = f.threads;

  PlanOutput plan;
  try {
    plan = Plan(query);
  } catch (const EmptyPlanError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoPlan;
  }
  const std::size_t shown = std::min<std::size_t>(
      plan.ranked.size(), static_cast<std::size_t>(std::max<std::int64_t>(f.top, 1)));

  if (f.common.format == "json") {
    json ranked = json::array();
    for (std::size_t i = 0; i < shown; ++i) ranked.push_back(ToJson(plan.ranked[i]));
    json j = {{"devices", query.devices},
              {"global_batch", query.global_batch},
              {"feasible_count", plan.ranked.size()},
              {"ranked", ranked}};
    if (f.explain) {
      json bad = json::array();
      for (const auto& r : plan.infeasible) bad.push_back(ToJson(r));
      j["infeasible"] = bad;
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }

  const double peak = query.hardware.peak_flops;
  if (f.common.format == "csv") {
    out << "rank,p,t,d,b,v,schedule,recompute,scatter_gather,iteration_seconds,"
           "tflops_per_device,percent_of_peak,bubble,memory_gb\n";
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& r = plan.ranked[i];
      const auto& c = r.config;
      out << i + 1 << "," << c.pipeline_size << "," << c.tensor_size << ","
          << c.data_size << "," << c.microbatch_size << ","
          << c.chunks_per_device << "," << ScheduleKindName(c.schedule) << ","
          << (c.activation_recompute ? 1 : 0) << ","
          << (c.scatter_gather ? 1 : 0) << "," << G(r.estimate.total_seconds)
          << "," << G(r.flops_per_device / 1e12) << ","
          << G(100.0 * r.flops_per_device / peak) << ","
          << G(r.estimate.bubble.value()) << ","
          << G(r.memory.total_bytes / 1e9) << "\n";
    }
    return kExitOk;
  }

  out << style.Bold(fmt::format(
             "{:>4} {:>4} {:>3} {:>4} {:>3} {:>3} {:<12} {:>4} {:>12} {:>10} "
             "{:>7} {:>9} {:>9}",
             "rank", "p", "t", "d", "b", "v", "schedule", "rc", "iter_s",
             "TFLOP/s", "%peak", "bubble", "mem_GB"))
      << "\n";
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& r = plan.ranked[i];
    const auto& c = r.config;
    out << fmt::format(
               "{:>4} {:>4} {:>3} {:>4} {:>3} {:>3} {:<12} {:>4} {:>12} {:>10} "
               "{:>7} {:>9} {:>9}",
               i + 1, c.pipeline_size, c.tensor_size, c.data_size,
               c.microbatch_size, c.chunks_per_device,
               ScheduleKindName(c.schedule),
               c.activation_recompute ? "on" : "off",
               G(r.estimate.total_seconds), G(r.flops_per_device / 1e12),
               G(100.0 * r.flops_per_device / peak),
               G(r.estimate.bubble.value()), G(r.memory.total_bytes / 1e9))
        << "\n";
  }
  out << plan.ranked.size() << " feasible configurations, "
      << plan.infeasible.size() << " infeasible\n";
  if (f.explain) {
    out << style.Bold("infeasible:") << "\n";
    for (const auto& r : plan.infeasible) {
      out << "  " << Describe(r.config) << "\n";
      for (const auto& reason : r.reasons) {
        out << "    " << style.Red(reason) << "\n";
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepFlags {
  CommonFlags common;
  ParallelFlags parallel;
  std::vector<std::int64_t> microbatches;
  std::vector<std::int64_t> batches;
  CLI::Option* microbatches_opt = nullptr;
  CLI::Option* batches_opt = nullptr;
};

int CmdSweep(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  const bool by_microbatch = f.microbatches_opt->count() > 0;
  const auto& values = by_microbatch ? f.microbatches : f.batches;
  if (values.empty()) {
    err << "error: sweep needs a non-empty --microbatches or --batches list\n";
    return kExitValidation;
  }
  const ModelSpec model = LoadModel(f.common.model_path);
  const HardwareSpec hw = LoadHardware(f.common);
  const ParallelConfig config = BuildConfig(f.parallel);
  const CostKnobs knobs = PlanQuery::DefaultPlannerKnobs();
  EstimateOptions opts;
  opts.zero_comm = f.parallel.zero_comm;
  opts.allow_cross_node_tensor = true;

  SweepResult result;
  if (by_microbatch) {
    if (f.parallel.global_batch < 1) {
      err << "error: microbatch sweep needs --batch\n";
      return kExitValidation;
    }
    const TrainingJob job{f.parallel.global_batch, 0, std::nullopt};
    result = MicrobatchSweep(config, model, job, hw, knobs, values, opts);
  } else {
    result = BatchSweep(config, model, hw, knobs, values, opts);
  }

  const char* x_name = by_microbatch ? "microbatch_size" : "global_batch";
  if (f.common.format == "json") {
    json pts = json::array();
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      const auto& pt = result.points[i];
      pts.push_back({{x_name, pt.x},
                     {"ok", pt.ok},
                     {"iteration_seconds", pt.iteration_seconds},
                     {"sequences_per_second", pt.sequences_per_second},
                     {"flops_per_device", pt.flops_per_device},
                     {"best", result.best && *result.best == i},
                     {"reason", pt.reason}});
    }
    out << json{{"points", pts}}.dump(2) << "\n";
    return kExitOk;
  }
  out << x_name
      << ",status,iteration_seconds,sequences_per_second,tflops_per_device,"
         "best,reason\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& pt = result.points[i];
    const bool best = result.best && *result.best == i;
    if (pt.ok) {
      out << pt.x << ",ok," << G(pt.iteration_seconds) << ","
          << G(pt.sequences_per_second) << "," << G(pt.flops_per_device / 1e12)
          << "," << (best ? "*" : "") << ",\n";
    } else {
      std::string reason = pt.reason;
      std::replace(reason.begin(), reason.end(), ',', ';');
      out << pt.x << ",skipped,,,,,\"" << reason << "\"\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// render

struct RenderFlags {
  std::string timeline_path;
  std::string out_dir = ".";
};

int CmdRender(const RenderFlags& f, std::ostream& out, const Style& style) {
  const Timeline tl = TimelineFromJson(LoadJsonFile(f.timeline_path));
  const StaticSchedule schedule = BuildSchedule(tl.kind, tl.p, tl.m, tl.v);
  const auto violations = ValidateTimeline(tl, schedule);
  const std::filesystem::path path =
      std::filesystem::path(f.out_dir) / "timeline.svg";
  WriteFile(path, RenderTimelineSvg(tl));
  out << "wrote " << path.string() << "\n";
  out << "violations: "
      << (violations.empty() ? style.Green("0")
                             : style.Red(std::to_string(violations.size())))
      << "\n";
  return violations.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, bool color) {
  const Style style(color && std::getenv("PTDP_NO_COLOR") == nullptr);
  CLI::App app{"Pipeline/tensor/data parallel training cost model", "ptdp"};
  app.require_subcommand(1);

  EstimateFlags est;
  auto* estimate = app.add_subcommand(
      "estimate", "parameter count, FLOPs and training-time estimate");
  AddCommon(estimate, est.common);
  estimate->add_option("--batch", est.global_batch, "global batch size")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--tokens", est.tokens, "training tokens");
  estimate->add_option("--gpus", est.devices, "number of devices");
  estimate->add_option("--throughput", est.throughput,
                       "achieved FLOP/s per device (default peak*efficiency)");
  estimate->add_option("--params", est.params,
                       "override the parameter count used for training time");
  estimate->add_flag("--no-recompute", est.no_recompute,
                     "count FLOPs without activation recomputation");

  SimulateFlags sim;
  auto* simulate =
      app.add_subcommand("simulate", "event simulation of one pipeline");
  AddCommon(simulate, sim.common);
  AddParallel(simulate, sim.parallel);
  simulate->add_option("--batch", sim.parallel.global_batch, "global batch")
      ->required();
  simulate->add_option("--batches", sim.batches, "batches to concatenate");
  simulate->add_flag("--svg", sim.common.svg, "also write timeline.svg");

  PlanFlags pl;
  auto* plan = app.add_subcommand("plan", "rank parallel configurations");
  plan->add_option("--query", pl.query_path, "plan query JSON")->required();
  plan->add_option("--model", pl.common.model_path, "override query model");
  AddCommon(plan, pl.common, /*with_model=*/false);
  plan->add_option("--top", pl.top, "rows to print");
  plan->add_flag("--explain", pl.explain, "list infeasible configurations");
  plan->add_flag("--simulate", pl.simulate,
                 "re-rank the top candidates with the event simulator");
  plan->add_option("--threads", pl.threads, "evaluation threads (0 = auto)");

  SweepFlags sw;
  auto* sweep = app.add_subcommand("sweep", "microbatch or batch-size sweep");
  AddCommon(sweep, sw.common);
  AddParallel(sweep, sw.parallel);
  sweep->add_option("--batch", sw.parallel.global_batch, "global batch");
  sw.microbatches_opt = sweep->add_option("--microbatches", sw.microbatches,
                                          "microbatch sizes")
                            ->delimiter(',');
  sw.batches_opt =
      sweep->add_option("--batches", sw.batches, "global batch sizes")
          ->delimiter(',')
          ->excludes(sw.microbatches_opt);
  sweep->get_option("--format")->default_val("csv");

  RenderFlags rf;
  auto* render =
      app.add_subcommand("render", "render a saved timeline JSON as SVG");
  render->add_option("--timeline", rf.timeline_path, "timeline JSON file")
      ->required();
  render->add_option("--out", rf.out_dir, "output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (estimate->parsed()) return CmdEstimate(est, out);
    if (simulate->parsed()) return CmdSimulate(sim, out, style);
    if (plan->parsed()) return CmdPlan(pl, out, err, style);
    if (sweep->parsed()) return CmdSweep(sw, out, err);
    if (render->parsed()) return CmdRender(rf, out, style);
  } catch (const EmptyPlanError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoPlan;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const MappingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ScheduleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace ptdp
