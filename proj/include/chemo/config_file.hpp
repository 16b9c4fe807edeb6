#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chemo/run_config.hpp"

namespace chemo {

// Parsed key/value config text. Sections are bracketed headers, possibly
// dotted ([coefficients.a0]); keys may repeat within a section and keep
// their order. '#' starts a comment.
struct ConfigDoc {
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    std::vector<Entry> entries;
  };
  std::vector<Section> sections;

  const Section* find(const std::string& name) const;
  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  // Replaces the first occurrence or appends; creates the section if absent.
  void set(const std::string& section, const std::string& key,
           const std::string& value);
};

ConfigDoc parse_config_text(const std::string& text);
ConfigDoc load_config_file(const std::string& path);

// Builds and validates a RunConfig from a parsed document. `base_dir`
// resolves relative tabulated-coefficient paths; sections listed in
// `ignore_sections` (e.g. "sweep") are skipped instead of rejected.
RunConfig build_run_config(const ConfigDoc& doc, const std::string& base_dir,
                           const std::vector<std::string>& ignore_sections = {});

RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& ignore_sections = {});

}  // namespace chemo
