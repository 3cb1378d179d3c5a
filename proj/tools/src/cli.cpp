#include "alseg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

#include "alseg/error.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace alseg::cli {
namespace {

struct OptionSpec {
  const char* flag;
  const char* key;
  const char* help;
  bool multi = false;
};

const std::vector<OptionSpec> kCommon = {
    {"--output,-o", "output", "output file or directory"},
    {"--threads", "threads", "worker threads (does not change results)"},
};

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<OptionSpec> options;
  std::function<void(const PipelineConfig&, std::ostream&)> body;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> kCommands = {
      {"tile",
       "split a volume into a padded grid of patches",
       {{"--input,-i", "input", "volume to tile (.vol3d)"},
        {"--name", "name", "patch name prefix (default: input stem)"},
        {"--patch", "patch", "patch shape Z,Y,X (default 32,512,512)"},
        {"--pad-mode", "pad_mode", "zero | reflect (default reflect)"}},
       cmd_tile},
      {"stitch",
       "reassemble a tiled volume from its grid manifest",
       {{"--input,-i", "input", "grid manifest written by tile"}},
       cmd_stitch},
      {"fuse",
       "stack 2D slice masks and label 3D connected components",
       {{"--slices", "slices", "directory of 1,Y,X slice volumes"},
        {"--connectivity", "connectivity", "6 | 26 (default 26)"},
        {"--min-size", "min_size", "drop components smaller than this"}},
       cmd_fuse},
      {"cc",
       "label connected components of a volume's foreground",
       {{"--input,-i", "input", "volume whose nonzero voxels are foreground"},
        {"--connectivity", "connectivity", "6 | 26 (default 26)"},
        {"--min-size", "min_size", "drop components smaller than this"}},
       cmd_cc},
      {"select",
       "choose patches for annotation from embeddings",
       {{"--embeddings", "embeddings", "f32le embedding payload (+ .hdr)"},
        {"--ids", "ids", "item ids, one per line"},
        {"--method", "method", "coreset | random (default coreset)"},
        {"--budget", "budget", "single budget (overrides --budgets)"},
        {"--budgets", "budgets", "comma-separated budgets"},
        {"--seed", "seed", "rng seed (default 0)"},
        {"--k-init", "k_init", "random initial picks (default 3)"}},
       cmd_select},
      {"evaluate",
       "match predicted and ground-truth instances",
       {{"--pred", "pred", "predicted instance volume(s)", true},
        {"--gt", "gt", "ground-truth instance volume(s)", true},
        {"--iou-threshold", "iou_threshold", "match if IoU > t (default 0.5)"},
        {"--budget", "budget", "budget recorded in the metrics file"}},
       cmd_evaluate},
      {"report",
       "learning-curve table and first-surpass summary",
       {{"--metrics", "metrics", "metrics files, one per budget", true},
        {"--full-budget", "full_budget", "budget treated as 100%"},
        {"--fraction", "fraction", "first-surpass fraction (default 0.9)"}},
       cmd_report},
  };
  return kCommands;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ',';
    out += p;
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Active-learning volumetric instance segmentation toolkit",
               "alseg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ALSEG_VERSION);

  struct Bound {
    const CommandSpec* spec;
    CLI::App* sub;
    std::string config;
    bool force = false;
    std::map<std::string, std::vector<std::string>> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<Bound> bound(commands().size());

  for (std::size_t i = 0; i < commands().size(); ++i) {
    auto& b = bound[i];
    b.spec = &commands()[i];
    b.sub = app.add_subcommand(b.spec->name, b.spec->help);
    b.sub->add_option("--config,-c", b.config, "key = value config file");
    b.sub->add_flag("--force", b.force, "overwrite existing outputs");
    auto add = [&](const OptionSpec& o) {
      auto* opt = b.sub->add_option(o.flag, b.values[o.key], o.help);
      if (o.multi) {
        opt->delimiter(',');
      } else {
        opt->expected(1);
      }
      b.options[o.key] = opt;
    };
    for (const auto& o : b.spec->options) add(o);
    for (const auto& o : kCommon) add(o);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto it = std::find_if(bound.begin(), bound.end(),
                               [](const Bound& b) { return b.sub->parsed(); });
  const std::string name = it->spec->name;
  try {
    Settings settings;
    if (!it->config.empty()) settings.load_config(it->config, name);
    for (const auto& [key, opt] : it->options) {
      if (opt->count() > 0) settings.set(key, join(it->values[key]));
    }
    if (it->force) settings.set("force", "true");
    it->spec->body(resolve(settings), out);
    return kOk;
  } catch (const UsageError& e) {
    err << "alseg " << name << ": usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const RefusedError& e) {
    err << "alseg " << name << ": refused: " << e.what() << "\n";
    return kRefused;
  } catch (const Error& e) {
    if (e.code() == Errc::invariant_violation) {
      err << "alseg " << name << ": internal error: " << e.what() << "\n";
      return kInvariant;
    }
    err << "alseg " << name << ": input error (" << to_string(e.code())
        << "): " << e.what() << "\n";
    return kInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "alseg " << name << ": input error (i/o failure): " << e.what()
        << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "alseg " << name << ": internal error: " << e.what() << "\n";
    return kInvariant;
  }
}

}  // namespace alseg::cli
