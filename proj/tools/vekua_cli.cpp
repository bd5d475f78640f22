// Command-line front end. Talks to the library only through the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "vekua/vekua.h"

namespace {

constexpr int kConfigError = 2;

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// "a,b,c" -> ["a","b","c"]; numbers stay strings and are parsed by the library.
std::string list(const std::string& s) {
  std::string out = "[";
  std::stringstream ss(s);
  std::string item;
  bool first = true;
  while (std::getline(ss, item, ',')) {
    if (!first) out += ',';
    out += quote(item);
    first = false;
  }
  return out + "]";
}

struct Override {
  const char* flag;
  const char* key;
  const char* help;
  enum Kind { String, Number, List, ComplexValue } kind;
};

const Override kOverrides[] = {
    {"--domain", "domain", "domain descriptor, e.g. rect{0.5,2,-1,1}", Override::String},
    {"--weight", "weight", "weight descriptor, e.g. tokamak{lambda:4}", Override::String},
    {"--seed", "seed", "field descriptor, e.g. exp{k:1}", Override::String},
    {"--solution", "solution", "solution dump to examine instead of seed/weight", Override::String},
    {"--spacing", "spacing", "grid spacing", Override::Number},
    {"--epsilons", "epsilons", "comma-separated damper parameters", Override::List},
    {"--damper", "damper", "halfplane | logmap", Override::String},
    {"--strip-a", "strip_a", "left strip edge", Override::Number},
    {"--strip-b", "strip_b", "right strip edge", Override::Number},
    {"--y-cut", "y_cut", "strip half height", Override::Number},
    {"--n-x", "n_x", "number of profile abscissae", Override::Number},
    {"--ma", "ma", "max |w| on the left strip edge", Override::Number},
    {"--mb", "mb", "max |w| on the right strip edge", Override::Number},
    {"--mus", "mus", "comma-separated exponents", Override::List},
    {"--a", "a", "power-weight coefficient: re or re,im", Override::ComplexValue},
    {"--center", "center", "disc centre: re,im", Override::ComplexValue},
    {"--radius", "radius", "disc radius", Override::Number},
    {"--p", "p", "Hardy exponent", Override::Number},
    {"--radii", "radii", "comma-separated circle radii", Override::List},
    {"--hp-bound", "hp_bound", "pass threshold for hp-norm", Override::Number},
    {"--mode", "mode", "auto | bounded | unbounded", Override::String},
    {"--c", "c", "grid tolerance constant", Override::Number},
    {"--tol", "tol", "fixed-point tolerance", Override::Number},
    {"--max-iter", "max_iter", "fixed-point iteration limit", Override::Number},
    {"--holomorphy-tol", "holomorphy_tol", "seed holomorphy threshold", Override::Number},
};

std::string json_value(const Override& o, const std::string& v) {
  switch (o.kind) {
    case Override::String:
    case Override::Number:
      return quote(v);
    case Override::List:
      return list(v);
    case Override::ComplexValue:
      return v.find(',') == std::string::npos ? quote(v) : list(v);
  }
  return quote(v);
}

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string condition;
  std::vector<std::pair<const Override*, std::string>> overrides;
  std::vector<std::string> values = std::vector<std::string>(std::size(kOverrides));
};

int fail(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return kConfigError;
}

int execute(const std::string& subcommand, const Options& opt) {
  std::string text = "{}";
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) return fail("cannot read config " + opt.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  vk_config* raw = nullptr;
  if (vk_config_parse(text.c_str(), &raw) != VK_OK) return fail(vk_last_error());
  std::unique_ptr<vk_config, decltype(&vk_config_free)> config(raw, vk_config_free);
  if (!opt.condition.empty() && vk_config_set(config.get(), "condition", quote(opt.condition).c_str()) != VK_OK) {
    return fail(vk_last_error());
  }
  for (std::size_t i = 0; i < std::size(kOverrides); ++i) {
    if (opt.values[i].empty()) continue;
    const Override& o = kOverrides[i];
    if (vk_config_set(config.get(), o.key, json_value(o, opt.values[i]).c_str()) != VK_OK) {
      return fail(vk_last_error());
    }
  }
  vk_report* rep = nullptr;
  if (vk_run(subcommand.c_str(), config.get(), opt.out_dir.empty() ? nullptr : opt.out_dir.c_str(), &rep) != VK_OK) {
    return fail(vk_last_error());
  }
  std::unique_ptr<vk_report, decltype(&vk_report_free)> report(rep, vk_report_free);
  std::cout << vk_report_body(report.get()) << '\n';
  return vk_report_exit_code(report.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for dbar w = alpha conj(w): weight conditions, solver, maximum principles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vk_version());
  Options opt;
  std::string chosen;
  for (std::size_t s = 0; s < vk_subcommand_count(); ++s) {
    const std::string name = vk_subcommand_name(s);
    CLI::App* sub = app.add_subcommand(name);
    if (name == "check-weight") {
      sub->add_option("condition", opt.condition, "carl | halfplane | logmap | threelines");
    }
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option("--out", opt.out_dir, "directory for report.json and extra outputs");
    for (std::size_t i = 0; i < std::size(kOverrides); ++i) {
      sub->add_option(kOverrides[i].flag, opt.values[i], kOverrides[i].help)->allow_extra_args(false);
    }
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  return execute(chosen, opt);
}
