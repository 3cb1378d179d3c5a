#include "commands.hpp"

#include <ostream>

#include "alseg/coreset.hpp"
#include "alseg/embedding.hpp"
#include "alseg/error.hpp"
#include "alseg/instance_metrics.hpp"
#include "alseg/label_fusion.hpp"
#include "alseg/patch_grid.hpp"
#include "alseg/report.hpp"
#include "alseg/text_format.hpp"
#include "alseg/volume_io.hpp"
#include "run_manifest.hpp"

namespace alseg::cli {
namespace fs = std::filesystem;
namespace {

using Files = std::vector<std::pair<fs::path, std::string>>;

void require_set(const fs::path& p, const char* key) {
  if (p.empty()) throw UsageError(std::string("missing required setting '") +
                                  key + "'");
}

void require_file(const fs::path& p, const char* key) {
  require_set(p, key);
  if (!fs::is_regular_file(p)) {
    throw Error(Errc::missing_file,
                std::string(key) + " '" + p.string() + "' does not exist");
  }
}

// Writes `files` and then the run manifest. Nothing is written when any
// target already exists and --force was not given.
void commit(const PipelineConfig& c, const std::string& command,
            const std::vector<fs::path>& inputs, const Files& files,
            const fs::path& manifest_path) {
  if (!c.force) {
    for (const auto& [path, bytes] : files) {
      if (fs::exists(path)) {
        throw RefusedError("output '" + path.string() +
                           "' exists; pass --force to overwrite");
      }
    }
    if (fs::exists(manifest_path)) {
      throw RefusedError("output '" + manifest_path.string() +
                         "' exists; pass --force to overwrite");
    }
  }
  RunManifest manifest(command, describe(c));
  for (const auto& p : inputs) manifest.add_input(p);
  for (const auto& [path, bytes] : files) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file(path.string(), bytes);
    manifest.add_output(path);
  }
  if (manifest_path.has_parent_path()) {
    fs::create_directories(manifest_path.parent_path());
  }
  write_file(manifest_path.string(), manifest.serialize());
}

fs::path sidecar(const fs::path& output) {
  return fs::path(output.string() + ".run-manifest");
}

}  // namespace

void cmd_tile(const PipelineConfig& c, std::ostream& out) {
  require_file(c.input, "input");
  require_set(c.output, "output");
  const std::string name =
      c.name.empty() ? c.input.stem().string() : c.name;

  const auto vol = read_volume(c.input.string());
  const auto spec = plan_grid(vol.shape(), c.patch_shape, c.pad_mode);
  const auto patches = tile(vol, spec, name);

  Files files;
  GridManifest grid{name, spec, {}};
  for (const auto& [id, patch] : patches) {
    files.emplace_back(c.output / patch_filename(id), encode_volume(patch));
    grid.patches.push_back(id);
  }
  const fs::path grid_path = c.output / (name + ".grid");
  files.emplace_back(grid_path, encode_grid_manifest(grid));
  commit(c, "tile", {c.input}, files, c.output / (name + ".run-manifest"));
  out << "tile: " << patches.size() << " patches, grid "
      << to_string(spec.grid_dims) << ", padded " << to_string(spec.padded_shape)
      << " -> " << grid_path.string() << "\n";
}

void cmd_stitch(const PipelineConfig& c, std::ostream& out) {
  require_file(c.input, "input");
  require_set(c.output, "output");
  const auto grid = decode_grid_manifest(read_file(c.input.string()));
  const fs::path dir = c.input.parent_path();
  std::vector<fs::path> inputs{c.input};
  std::vector<Patch> patches;
  for (const auto& id : grid.patches) {
    const fs::path p = dir / patch_filename(id);
    require_file(p, "patch");
    inputs.push_back(p);
    patches.emplace_back(id, read_volume(p.string()));
  }
  const auto vol = reassemble(patches, grid.spec);
  commit(c, "stitch", inputs, {{c.output, encode_volume(vol)}},
         sidecar(c.output));
  out << "stitch: " << patches.size() << " patches -> "
      << to_string(vol.shape()) << " " << c.output.string() << "\n";
}

void cmd_fuse(const PipelineConfig& c, std::ostream& out) {
  require_set(c.slices, "slices");
  require_set(c.output, "output");
  const auto files = list_slice_files(c.slices);
  const auto mask = stack_slice_directory(c.slices);
  const auto labels = connected_components(mask, c.connectivity, c.min_size);
  commit(c, "fuse", files, {{c.output, encode_volume(labels)}},
         sidecar(c.output));
  out << "fuse: " << files.size() << " slices, "
      << count_instances(labels) << " components ("
      << to_string(c.connectivity) << ") -> " << c.output.string() << "\n";
}

void cmd_cc(const PipelineConfig& c, std::ostream& out) {
  require_file(c.input, "input");
  require_set(c.output, "output");
  const auto vol = read_volume(c.input.string());
  const auto labels =
      connected_components(binarize(vol), c.connectivity, c.min_size);
  commit(c, "cc", {c.input}, {{c.output, encode_volume(labels)}},
         sidecar(c.output));
  out << "cc: " << count_instances(labels) << " components ("
      << to_string(c.connectivity) << ") -> " << c.output.string() << "\n";
}

void cmd_select(const PipelineConfig& c, std::ostream& out) {
  require_file(c.embeddings, "embeddings");
  require_file(c.ids, "ids");
  require_set(c.output, "output");
  const fs::path header(c.embeddings.string() + ".hdr");
  require_file(header, "embeddings header");
  const auto e = read_embeddings(c.embeddings.string(), c.ids.string());
  const std::string method(to_string(c.method));

  Files files;
  std::vector<std::string> lines;
  for (std::uint64_t b : c.selection_budgets()) {
    if (b == 0) {
      lines.push_back("select: budget 0 skipped (nothing to select)");
      continue;
    }
    if (c.method == SelectionMethod::coreset && b < c.k_init) {
      throw UsageError("budget " + std::to_string(b) + " is below k_init " +
                       std::to_string(c.k_init));
    }
    if (b > e.rows()) {
      throw Error(Errc::out_of_range, "budget " + std::to_string(b) +
                                          " exceeds item count " +
                                          std::to_string(e.rows()));
    }
    const auto m =
        c.method == SelectionMethod::coreset
            ? kcenter_greedy(e, b, c.k_init, c.rng_seed, {.threads = c.threads})
            : random_select(e, b, c.rng_seed);
    const fs::path path =
        c.output / (method + "_b" + std::to_string(b) + ".selection");
    files.emplace_back(path, encode_manifest(m));
    lines.push_back("select: " + method + " budget " + std::to_string(b) +
                    " radius " + format_double(m.radius_trace.back()) +
                    " -> " + path.string());
  }
  commit(c, "select", {c.embeddings, header, c.ids}, files,
         c.output / (method + ".run-manifest"));
  for (const auto& l : lines) out << l << "\n";
}

void cmd_evaluate(const PipelineConfig& c, std::ostream& out) {
  require_set(c.output, "output");
  if (c.pred.empty() || c.pred.size() != c.gt.size()) {
    throw UsageError("evaluate needs equally many pred and gt volumes (got " +
                     std::to_string(c.pred.size()) + " and " +
                     std::to_string(c.gt.size()) + ")");
  }
  if (c.output.extension() == ".csv") {
    throw UsageError("evaluate output must not end in .csv; the CSV is "
                     "written next to it");
  }
  std::vector<fs::path> inputs;
  for (std::size_t i = 0; i < c.pred.size(); ++i) {
    require_file(c.pred[i], "pred");
    require_file(c.gt[i], "gt");
    inputs.push_back(c.pred[i]);
    inputs.push_back(c.gt[i]);
  }

  KeyValueDoc doc;
  doc.set("format_version", "1");
  doc.set("iou_threshold", format_double(c.iou_threshold));
  if (c.budget) doc.set("budget", std::to_string(*c.budget));
  doc.set("pairs", std::to_string(c.pred.size()));
  std::string csv = "pair,pred,gt," + metrics_csv_header() + "\n";

  std::vector<MatchResult> results;
  for (std::size_t i = 0; i < c.pred.size(); ++i) {
    const auto pred = read_volume(c.pred[i].string());
    const auto gt = read_volume(c.gt[i].string());
    if (pred.shape() != gt.shape()) {
      throw Error(Errc::shape_mismatch,
                  "pred '" + c.pred[i].string() + "' has shape " +
                      to_string(pred.shape()) + " but gt '" +
                      c.gt[i].string() + "' has shape " +
                      to_string(gt.shape()));
    }
    results.push_back(match_instances(pred, gt, c.iou_threshold, c.threads));
    const auto r = compute_metrics(results.back());
    const std::string prefix = "pair." + std::to_string(i) + ".";
    doc.set(prefix + "pred", c.pred[i].string());
    doc.set(prefix + "gt", c.gt[i].string());
    append_metrics(doc, r, prefix);
    csv += std::to_string(i) + "," + c.pred[i].string() + "," +
           c.gt[i].string() + "," +
           metrics_csv_row(c.budget, r, c.iou_threshold) + "\n";
  }
  const auto pooled = pool_metrics(results);
  append_metrics(doc, pooled);
  csv += "pooled,,," + metrics_csv_row(c.budget, pooled, c.iou_threshold) +
         "\n";

  fs::path csv_path = c.output;
  csv_path.replace_extension(".csv");
  commit(c, "evaluate", inputs,
         {{c.output, doc.serialize()}, {csv_path, csv}}, sidecar(c.output));
  out << "evaluate: " << c.pred.size() << " pair(s) tp=" << pooled.tp
      << " fp=" << pooled.fp << " fn=" << pooled.fn
      << " f1=" << display_score(pooled.f1)
      << " pq=" << display_score(pooled.pq) << " -> " << c.output.string()
      << "\n";
}

void cmd_report(const PipelineConfig& c, std::ostream& out) {
  require_set(c.output, "output");
  if (c.metrics.empty()) throw UsageError("report needs metrics files");
  std::vector<std::pair<std::uint64_t, MetricsRecord>> records;
  for (const auto& p : c.metrics) {
    require_file(p, "metrics");
    const auto doc = KeyValueDoc::parse(read_file(p.string()), false).doc;
    try {
      records.emplace_back(parse_u64(doc.require("budget"), "budget"),
                           read_metrics(doc));
    } catch (const Error& e) {
      throw Error(e.code(), p.string() + ": " + e.what());
    }
  }
  const auto curve = LearningCurve::build(records, c.full_budget);
  const std::string summary = first_surpass_summary(curve, c.fraction);
  commit(c, "report", c.metrics,
         {{c.output / "curve.csv", curve_csv(curve)},
          {c.output / "curve.txt", curve_table(curve, c.fraction)},
          {c.output / "first_surpass.txt", summary}},
         c.output / "report.run-manifest");
  out << summary;
}

}  // namespace alseg::cli
