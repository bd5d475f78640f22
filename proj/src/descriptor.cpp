#include "vekua/descriptor.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "vekua/error.hpp"

namespace vekua {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::SpacingTooCoarse: return "SpacingTooCoarse";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::DomainSingularity: return "DomainSingularity";
    case ErrorCode::NuOutOfRange: return "NuOutOfRange";
    case ErrorCode::SigmaNonpositive: return "SigmaNonpositive";
    case ErrorCode::MissingNeighbor: return "MissingNeighbor";
    case ErrorCode::TargetOutsideDomain: return "TargetOutsideDomain";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularWeight: return "SingularWeight";
    case ErrorCode::NotHolomorphic: return "NotHolomorphic";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::InterpolationOutsideGrid: return "InterpolationOutsideGrid";
    case ErrorCode::DomainNotInRightHalfPlane: return "DomainNotInRightHalfPlane";
    case ErrorCode::DiscIntersectsDomain: return "DiscIntersectsDomain";
    case ErrorCode::BranchCutCrossesDomain: return "BranchCutCrossesDomain";
    case ErrorCode::ImageOutsideDomain: return "ImageOutsideDomain";
    case ErrorCode::NoDampersForUnboundedDomain: return "NoDampersForUnboundedDomain";
    case ErrorCode::StripNotCovered: return "StripNotCovered";
    case ErrorCode::ZeroModulusLine: return "ZeroModulusLine";
    case ErrorCode::NonpositiveBoundaryMax: return "NonpositiveBoundaryMax";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_number(std::string_view text) {
  auto s = trim(text);
  if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorCode::ConfigInvalid, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

Descriptor parse_descriptor(std::string_view text) {
  auto s = trim(text);
  Descriptor d;
  auto brace = s.find('{');
  if (brace == std::string_view::npos) {
    if (s.empty() || s.find('}') != std::string_view::npos) {
      fail(ErrorCode::ConfigInvalid, "malformed descriptor '" + std::string(text) + "'");
    }
    d.name = std::string(s);
    return d;
  }
  if (s.back() != '}') fail(ErrorCode::ConfigInvalid, "descriptor missing closing brace: '" + std::string(text) + "'");
  d.name = std::string(trim(s.substr(0, brace)));
  if (d.name.empty()) fail(ErrorCode::ConfigInvalid, "descriptor without a name: '" + std::string(text) + "'");
  auto body = s.substr(brace + 1, s.size() - brace - 2);
  if (body.find_first_of("{}") != std::string_view::npos) {
    fail(ErrorCode::ConfigInvalid, "nested braces in descriptor '" + std::string(text) + "'");
  }
  if (trim(body).empty()) return d;
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    auto item = trim(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) fail(ErrorCode::ConfigInvalid, "empty argument in descriptor '" + std::string(text) + "'");
    Descriptor::Arg arg;
    auto colon = item.find(':');
    if (colon != std::string_view::npos) {
      arg.key = std::string(trim(item.substr(0, colon)));
      arg.value = std::string(trim(item.substr(colon + 1)));
      if (arg.key->empty() || arg.value.empty()) {
        fail(ErrorCode::ConfigInvalid, "malformed key:value in descriptor '" + std::string(text) + "'");
      }
    } else {
      arg.value = std::string(item);
    }
    d.args.push_back(std::move(arg));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return d;
}

std::optional<std::string> Descriptor::find(std::string_view key, std::optional<std::size_t> position) const {
  for (const auto& a : args) {
    if (a.key && *a.key == key) return a.value;
  }
  if (position) {
    std::size_t k = 0;
    for (const auto& a : args) {
      if (a.key) continue;
      if (k == *position) return a.value;
      ++k;
    }
  }
  return std::nullopt;
}

double Descriptor::number(std::string_view key, std::optional<std::size_t> position, double fallback) const {
  auto v = find(key, position);
  return v ? parse_number(*v) : fallback;
}

double Descriptor::number(std::string_view key, std::optional<std::size_t> position) const {
  auto v = find(key, position);
  if (!v) fail(ErrorCode::ConfigInvalid, "descriptor '" + to_string() + "' is missing '" + std::string(key) + "'");
  return parse_number(*v);
}

std::vector<double> Descriptor::positional_numbers() const {
  std::vector<double> out;
  for (const auto& a : args) {
    if (!a.key) out.push_back(parse_number(a.value));
  }
  return out;
}

std::string Descriptor::to_string() const {
  if (args.empty()) return name;
  std::ostringstream os;
  os << name << '{';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    if (args[i].key) os << *args[i].key << ':';
    os << args[i].value;
  }
  os << '}';
  return os.str();
}

}  // namespace vekua
