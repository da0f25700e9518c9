#include <array>
#include <set>
#include <string>
#include <string_view>

#include "grbench/backend.hpp"
#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

namespace {

constexpr std::array<std::string_view, 7> kTemplateNames = {
    "bulk_nodes", "bulk_edges", "single_node", "single_edge",
    "shortest_path", "update_edge", "delete_edge"};

constexpr std::array<std::string_view, 5> kMandatoryTemplates = {
    "bulk_nodes", "bulk_edges", "single_node", "single_edge", "shortest_path"};

// Values may carry literal newlines as "\n" (queries are often multi-line).
std::string unescape(std::string_view raw, std::size_t line_no) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '\\') {
      out.push_back(raw[i]);
      continue;
    }
    if (i + 1 >= raw.size()) {
      raise(ErrorCode::config,
            "dangling escape at end of line " + std::to_string(line_no));
    }
    const char next = raw[++i];
    switch (next) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case '\\': out.push_back('\\'); break;
      default:
        raise(ErrorCode::config, std::string("unknown escape '\\") + next +
                                     "' on line " + std::to_string(line_no));
    }
  }
  return out;
}

}  // namespace

BackendConfig BackendConfig::reference() { return BackendConfig{}; }

BackendConfig BackendConfig::parse(std::string_view text) {
  BackendConfig config;
  config.kind = Kind::External;

  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (const std::string& raw_line : util::split(text, '\n')) {
    ++line_no;
    const std::string_view line = util::trim(raw_line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        raise(ErrorCode::config, "unterminated section on line " + std::to_string(line_no));
      }
      section = std::string(util::trim(line.substr(1, line.size() - 2)));
      if (section != "endpoint" && section != "templates" && section != "response" &&
          section != "reset") {
        raise(ErrorCode::config, "unknown section [" + section + "]");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      raise(ErrorCode::config, "expected key = value on line " + std::to_string(line_no));
    }
    if (section.empty()) {
      raise(ErrorCode::config, "key outside any section on line " + std::to_string(line_no));
    }
    const std::string key(util::trim(line.substr(0, eq)));
    const std::string value = unescape(util::trim(line.substr(eq + 1)), line_no);
    if (!seen.insert(section + "." + key).second) {
      raise(ErrorCode::config, "duplicate key " + section + "." + key);
    }

    if (section == "endpoint") {
      if (key == "url") config.url = value;
      else if (key == "user") config.user = value;
      else if (key == "password") config.password = value;
      else if (key == "ram_url") config.ram_url = value;
      else if (key == "timeout_s") config.timeout_s = util::parse_double(value);
      else raise(ErrorCode::config, "unknown key endpoint." + key);
    } else if (section == "templates") {
      bool known = false;
      for (std::string_view name : kTemplateNames) known |= (key == name);
      if (!known) raise(ErrorCode::config, "unknown key templates." + key);
      config.templates[key] = value;
    } else if (section == "response") {
      if (key == "nodes_path") config.nodes_path = value;
      else if (key == "cost_path") config.cost_path = value;
      else if (key == "ram_path") config.ram_path = value;
      else raise(ErrorCode::config, "unknown key response." + key);
    } else {  // reset
      if (key == "command") config.reset_command = value;
      else if (key == "wipe_command") config.wipe_command = value;
      else if (key == "ready_probe") config.ready_probe = value;
      else raise(ErrorCode::config, "unknown key reset." + key);
    }
  }

  config.validate();
  return config;
}

BackendConfig BackendConfig::load(const std::filesystem::path& file) {
  return parse(util::read_file(file));
}

void BackendConfig::validate() const {
  if (kind == Kind::Reference) return;
  if (url.empty()) raise(ErrorCode::config, "endpoint.url is required");
  if (!(timeout_s > 0.0)) raise(ErrorCode::config, "endpoint.timeout_s must be positive");
  for (std::string_view name : kMandatoryTemplates) {
    if (!templates.count(std::string(name))) {
      raise(ErrorCode::config, "missing mandatory template templates." + std::string(name));
    }
  }
}

}  // namespace grbench
