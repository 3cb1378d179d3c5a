#include "config.hpp"

#include <set>
#include <type_traits>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"

namespace alseg::cli {
namespace fs = std::filesystem;
namespace {

const std::set<std::string> kKeys = {
    "patch",      "pad_mode", "connectivity", "min_size", "iou_threshold",
    "method",     "k_init",   "budgets",      "budget",   "seed",
    "full_budget", "fraction", "threads",     "force",    "input",
    "output",     "name",     "slices",       "embeddings", "ids",
    "pred",       "gt",       "metrics"};

const std::set<std::string> kPathKeys = {"input",      "output", "slices",
                                         "embeddings", "ids",    "pred",
                                         "gt",         "metrics"};

const std::set<std::string> kCommands = {"tile",     "stitch", "fuse",
                                         "cc",       "select", "evaluate",
                                         "report"};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::string rebase(const std::string& value, const fs::path& base) {
  std::vector<std::string> parts;
  for (const auto& p : split(value, ',')) {
    const fs::path path(std::string(trim(p)));
    parts.push_back(path.is_absolute() || base.empty()
                        ? path.string()
                        : (base / path).lexically_normal().string());
  }
  return join(parts);
}

template <class F>
auto typed(const std::string& key, const std::string& value, F&& parse) {
  try {
    return parse(value);
  } catch (const Error& e) {
    throw UsageError("invalid value '" + value + "' for " + key + ": " +
                     e.what());
  }
}

std::vector<std::uint64_t> parse_list(const std::string& key,
                                      const std::string& value) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split(value, ',')) {
    out.push_back(typed(key, part, [&](const std::string& v) {
      return parse_u64(trim(v), key);
    }));
  }
  return out;
}

std::vector<fs::path> parse_paths(const std::string& value) {
  std::vector<fs::path> out;
  for (const auto& part : split(value, ',')) {
    if (!trim(part).empty()) out.emplace_back(std::string(trim(part)));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw UsageError("invalid value '" + value + "' for " + key +
                   ": expected true or false");
}

}  // namespace

bool Settings::is_known(const std::string& key) { return kKeys.count(key); }

void Settings::load_config(const fs::path& path, const std::string& command) {
  if (!fs::is_regular_file(path)) {
    throw Error(Errc::missing_file,
                "config file '" + path.string() + "' does not exist");
  }
  const auto parsed = KeyValueDoc::parse(read_file(path.string()), false);
  const fs::path base = path.parent_path();
  std::set<std::string> seen;
  for (const auto& [raw_key, raw_value] : parsed.doc.entries()) {
    if (!seen.insert(raw_key).second) {
      throw UsageError(path.string() + ": key '" + raw_key +
                       "' given twice");
    }
    std::string key = raw_key;
    std::string scope;
    if (auto dot = key.find('.'); dot != std::string::npos) {
      scope = key.substr(0, dot);
      key = key.substr(dot + 1);
      if (!kCommands.count(scope)) {
        throw UsageError(path.string() + ": unknown command scope '" +
                         scope + "'");
      }
    }
    if (!is_known(key)) {
      throw UsageError(path.string() + ": unknown key '" + raw_key + "'");
    }
    const std::string value =
        kPathKeys.count(key) ? rebase(raw_value, base) : raw_value;
    if (scope.empty()) {
      global_[key] = value;
    } else if (scope == command) {
      scoped_[key] = value;
    }
  }
}

void Settings::set(const std::string& key, std::string value) {
  if (!is_known(key)) throw UsageError("unknown setting '" + key + "'");
  command_line_[key] = std::move(value);
}

std::optional<std::string> Settings::find(const std::string& key) const {
  for (const auto* layer : {&command_line_, &scoped_, &global_}) {
    if (auto it = layer->find(key); it != layer->end()) return it->second;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> PipelineConfig::selection_budgets() const {
  if (budget) return {*budget};
  return budgets;
}

PipelineConfig resolve(const Settings& s) {
  PipelineConfig c;
  auto get = [&](const char* key) { return s.find(key); };
  auto u64 = [&](const char* key, const std::string& v) {
    return typed(key, v, [&](const std::string& t) {
      return parse_u64(trim(t), key);
    });
  };
  auto real = [&](const char* key, const std::string& v) {
    return typed(key, v, [&](const std::string& t) {
      return parse_double(trim(t), key);
    });
  };

  if (auto v = get("patch")) {
    c.patch_shape = typed("patch", *v, [](const std::string& t) {
      return parse_shape(t);
    });
  }
  if (auto v = get("pad_mode")) {
    c.pad_mode = typed("pad_mode", *v, [](const std::string& t) {
      return parse_pad_mode(t);
    });
  }
  if (auto v = get("connectivity")) {
    c.connectivity = typed("connectivity", *v, [](const std::string& t) {
      return parse_connectivity(t);
    });
  }
  if (auto v = get("min_size")) c.min_size = u64("min_size", *v);
  if (auto v = get("iou_threshold")) {
    c.iou_threshold = real("iou_threshold", *v);
    if (!(c.iou_threshold >= 0.5 && c.iou_threshold < 1.0)) {
      throw UsageError("iou_threshold must be in [0.5, 1), got " + *v);
    }
  }
  if (auto v = get("method")) {
    c.method = typed("method", *v, [](const std::string& t) {
      return parse_selection_method(t);
    });
  }
  if (auto v = get("k_init")) {
    c.k_init = u64("k_init", *v);
    if (c.k_init == 0) throw UsageError("k_init must be at least 1");
  }
  if (auto v = get("budgets")) c.budgets = parse_list("budgets", *v);
  if (auto v = get("budget")) c.budget = u64("budget", *v);
  if (auto v = get("seed")) c.rng_seed = u64("seed", *v);
  if (auto v = get("full_budget")) c.full_budget = u64("full_budget", *v);
  if (auto v = get("fraction")) {
    c.fraction = real("fraction", *v);
    if (!(c.fraction > 0.0 && c.fraction <= 1.0)) {
      throw UsageError("fraction must be in (0, 1], got " + *v);
    }
  }
  if (auto v = get("threads")) {
    c.threads = u64("threads", *v);
    if (c.threads == 0) throw UsageError("threads must be at least 1");
  }
  if (auto v = get("force")) c.force = parse_bool("force", *v);

  if (auto v = get("input")) c.input = *v;
  if (auto v = get("output")) c.output = *v;
  if (auto v = get("name")) c.name = *v;
  if (auto v = get("slices")) c.slices = *v;
  if (auto v = get("embeddings")) c.embeddings = *v;
  if (auto v = get("ids")) c.ids = *v;
  if (auto v = get("pred")) c.pred = parse_paths(*v);
  if (auto v = get("gt")) c.gt = parse_paths(*v);
  if (auto v = get("metrics")) c.metrics = parse_paths(*v);
  return c;
}

std::string describe(const PipelineConfig& c) {
  KeyValueDoc d;
  auto list = [](const auto& items) {
    std::vector<std::string> parts;
    for (const auto& i : items) {
      if constexpr (std::is_same_v<std::decay_t<decltype(i)>, fs::path>) {
        parts.push_back(i.string());
      } else {
        parts.push_back(std::to_string(i));
      }
    }
    return join(parts);
  };
  d.set("patch", to_string(c.patch_shape));
  d.set("pad_mode", std::string(to_string(c.pad_mode)));
  d.set("connectivity", std::string(to_string(c.connectivity)));
  d.set("min_size", std::to_string(c.min_size));
  d.set("iou_threshold", format_double(c.iou_threshold));
  d.set("method", std::string(to_string(c.method)));
  d.set("k_init", std::to_string(c.k_init));
  d.set("budgets", list(c.budgets));
  d.set("budget", c.budget ? std::to_string(*c.budget) : "");
  d.set("seed", std::to_string(c.rng_seed));
  d.set("full_budget", c.full_budget ? std::to_string(*c.full_budget) : "");
  d.set("fraction", format_double(c.fraction));
  d.set("input", c.input.string());
  d.set("output", c.output.string());
  d.set("name", c.name);
  d.set("slices", c.slices.string());
  d.set("embeddings", c.embeddings.string());
  d.set("ids", c.ids.string());
  d.set("pred", list(c.pred));
  d.set("gt", list(c.gt));
  d.set("metrics", list(c.metrics));
  return d.serialize();
}

}  // namespace alseg::cli
