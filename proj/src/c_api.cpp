#include "vekua/vekua.h"

#include <cstring>
#include <exception>
#include <string>

#include "vekua/error.hpp"
#include "vekua/experiment.hpp"

struct vk_config {
  vekua::ExperimentConfig config;
};

struct vk_report {
  vekua::RunResult result;
  std::string body;
};

namespace {

thread_local std::string last_error;

vk_status record(vk_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
vk_status guarded(F&& f) {
  try {
    f();
    return VK_OK;
  } catch (const vekua::Error& e) {
    return record(static_cast<vk_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return record(VK_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(VK_ERR_INTERNAL, "unknown error");
  }
}

vk_status null_argument(const char* what) { return record(VK_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

vekua::Json parse_json(const char* text) {
  try {
    return vekua::Json::parse(text);
  } catch (const vekua::Json::exception& e) {
    vekua::fail(vekua::ErrorCode::ConfigInvalid, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

extern "C" {

const char* vk_last_error(void) { return last_error.c_str(); }

const char* vk_status_name(vk_status status) {
  if (status == VK_OK) return "Ok";
  if (status == VK_ERR_INTERNAL) return "Internal";
  if (status < VK_ERR_INVALID_ARGUMENT || status > VK_ERR_IO) return "Unknown";
  return vekua::error_code_name(static_cast<vekua::ErrorCode>(status)).data();
}

const char* vk_version(void) { return "0.1.0"; }

size_t vk_subcommand_count(void) { return vekua::subcommands().size(); }

const char* vk_subcommand_name(size_t index) {
  const auto& names = vekua::subcommands();
  return index < names.size() ? names[index].c_str() : nullptr;
}

vk_status vk_config_parse(const char* json, vk_config** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new vk_config{vekua::config_from_json(parse_json(json))}; });
}

vk_status vk_config_set(vk_config* config, const char* key, const char* json_value) {
  if (!config) return null_argument("config");
  if (!key) return null_argument("key");
  if (!json_value) return null_argument("json_value");
  return guarded([&] {
    vekua::Json j = vekua::config_to_json(config->config);
    j[key] = parse_json(json_value);
    config->config = vekua::config_from_json(j);
  });
}

vk_status vk_config_to_json(const vk_config* config, char** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const std::string text = vekua::config_to_json(config->config).dump();
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void vk_config_free(vk_config* config) { delete config; }

void vk_string_free(char* text) { delete[] text; }

vk_status vk_run(const char* subcommand, const vk_config* config, const char* out_dir, vk_report** out) {
  if (!subcommand) return null_argument("subcommand");
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto* report = new vk_report;
    try {
      report->result = out_dir ? vekua::run_to_directory(subcommand, config->config, out_dir)
                               : vekua::run(subcommand, config->config);
      report->body = report->result.body.dump(2);
    } catch (...) {
      delete report;
      throw;
    }
    *out = report;
  });
}

int vk_report_exit_code(const vk_report* report) { return report ? report->result.exit_code : 2; }

const char* vk_report_body(const vk_report* report) { return report ? report->body.c_str() : ""; }

size_t vk_report_file_count(const vk_report* report) { return report ? report->result.files.size() : 0; }

const char* vk_report_file_name(const vk_report* report, size_t index) {
  if (!report || index >= report->result.files.size()) return nullptr;
  return report->result.files[index].first.c_str();
}

const char* vk_report_file_contents(const vk_report* report, size_t index) {
  if (!report || index >= report->result.files.size()) return nullptr;
  return report->result.files[index].second.c_str();
}

void vk_report_free(vk_report* report) { delete report; }

}  // extern "C"
