#include "turinglab/model_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "turinglab/errors.hpp"

namespace turinglab {

namespace {

using nlohmann::json;

// nlohmann reports a byte offset one past the offending character.
void locate(const std::string& text, std::size_t byte, int& line, int& column) {
  line = 1;
  column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

std::vector<double> numbers(const std::string& key, const json& value) {
  if (value.is_number()) return {value.get<double>()};
  if (value.is_array()) {
    std::vector<double> out;
    for (const auto& v : value) {
      if (!v.is_number()) throw ConfigError("params." + key + ": expected numbers");
      out.push_back(v.get<double>());
    }
    if (out.empty()) throw ConfigError("params." + key + ": empty array");
    return out;
  }
  throw ConfigError("params." + key + ": expected a number or an array of numbers");
}

}  // namespace

ModelConfig parse_model_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 0;
    int column = 0;
    locate(text, e.byte, line, column);
    std::ostringstream msg;
    msg << "config syntax error at line " << line << ", column " << column;
    throw ConfigError(msg.str(), line, column);
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ModelConfig out;
  for (const auto& [key, value] : doc.items()) {
    if (key == "model") {
      if (!value.is_string()) throw ConfigError("'model' must be a string");
      out.model = value.get<std::string>();
    } else if (key == "params") {
      if (!value.is_object()) throw ConfigError("'params' must be an object");
      for (const auto& [pk, pv] : value.items()) out.params[pk] = numbers(pk, pv);
    } else if (key == "mu_convention") {
      if (!value.is_string() || value.get<std::string>() != "eps^2") {
        throw ConfigError("mu_convention: only \"eps^2\" (mu = eps^2) is supported");
      }
    } else if (key == "phi_hat") {
      if (!value.is_array()) throw ConfigError("'phi_hat' must be an array of [k, re, im]");
      out.has_phi_hat = true;
      for (const auto& row : value) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
            !row[2].is_number()) {
          throw ConfigError("phi_hat rows must be numeric [k, re, im] triples");
        }
        out.phi_hat.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (out.model.empty()) throw ConfigError("config lacks 'model'");
  return out;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_config(buf.str());
}

ModelSpec build_model(const ModelConfig& config) {
  KernelTransform phi;
  if (config.has_phi_hat) phi = tabulated_kernel(config.phi_hat);
  return builtin(config.model, config.params, std::move(phi));
}

}  // namespace turinglab
