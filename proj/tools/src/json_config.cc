// Copyright 2026 The Trojan Drive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trojan_drive/tools/json_config.h"

#include <algorithm>
#include <iterator>

#include "json.hpp"

namespace trojan_drive::tools {
namespace {

using nlohmann::json;

std::string OptionName(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string ScalarText(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  return value.dump();
}

bool IsSubcommand(const CLI::App* app, const std::string& name) {
  return app != nullptr && app->get_subcommand_no_throw(name) != nullptr;
}

void Collect(const json& object, const std::vector<std::string>& parents,
             const CLI::App* scope, std::vector<CLI::ConfigItem>& items) {
  for (const auto& [key, value] : object.items()) {
    if (value.is_null()) continue;
    if (value.is_object()) {
      if (!IsSubcommand(scope, key)) {
        throw CLI::ConfigError("config key '" + key +
                               "' is an object but not a subcommand");
      }
      std::vector<std::string> nested = parents;
      nested.push_back(key);
      Collect(value, nested, scope->get_subcommand_no_throw(key), items);
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = OptionName(key);
    if (value.is_array()) {
      for (const json& element : value) {
        if (element.is_structured()) {
          throw CLI::ConfigError("config key '" + key +
                                 "' holds a nested array or object");
        }
        item.inputs.push_back(ScalarText(element));
      }
    } else {
      item.inputs.push_back(ScalarText(value));
    }
    items.push_back(std::move(item));
  }
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also,
                                  bool /*write_description*/,
                                  std::string /*prefix*/) const {
  json doc = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (results.size() == 1) {
        doc[name] = results.front();
      } else {
        doc[name] = results;
      }
    } else if (default_also && !opt->get_default_str().empty()) {
      doc[name] = opt->get_default_str();
    }
  }
  return doc.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  const std::string text((std::istreambuf_iterator<char>(input)),
                         std::istreambuf_iterator<char>());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CLI::ConfigError("config must be a JSON object");

  std::vector<std::string> parents;
  const CLI::App* scope = root_;
  if (root_ != nullptr) {
    for (const CLI::App* selected = root_;;) {
      const auto subs = selected->get_subcommands();
      if (subs.empty()) break;
      selected = subs.front();
      parents.push_back(selected->get_name());
      scope = selected;
    }
  }

  // Nested sections address subcommands from the root; flat keys from the
  // selected subcommand.
  std::vector<CLI::ConfigItem> items;
  json flat = json::object();
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      Collect(json{{key, value}}, {}, root_, items);
    } else {
      flat[key] = value;
    }
  }
  Collect(flat, parents, scope, items);
  return items;
}

}  // namespace trojan_drive::tools
