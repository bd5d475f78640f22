#pragma once

// Compact catalog descriptors of the form `name` or `name{v1,v2,key:v3}`,
// used for weights, seeds and domains on the command line and in configs.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vekua {

struct Descriptor {
  struct Arg {
    std::optional<std::string> key;
    std::string value;
  };

  std::string name;
  std::vector<Arg> args;

  // Argument lookup by key, falling back to position among unkeyed args.
  std::optional<std::string> find(std::string_view key, std::optional<std::size_t> position = {}) const;
  double number(std::string_view key, std::optional<std::size_t> position, double fallback) const;
  double number(std::string_view key, std::optional<std::size_t> position) const;
  std::vector<double> positional_numbers() const;

  std::string to_string() const;
};

// Throws Error(ConfigInvalid) on malformed input.
Descriptor parse_descriptor(std::string_view text);

double parse_number(std::string_view text);

// Shortest representation that parses back to the same double.
std::string format_number(double value);

}  // namespace vekua
