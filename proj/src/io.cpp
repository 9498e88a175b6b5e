#include "pbom/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pbom/errors.hpp"

namespace pbom {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

struct FieldSpec {
  const char* key;
  bool integer;
};

constexpr FieldSpec kParamFields[] = {
    {"omega_t", false}, {"Omega", false},  {"kappa_ex", false}, {"kappa_0", false},
    {"gamma", false},   {"g", false},      {"N_t", false},      {"zeta", false},
    {"T", false},       {"T_m", false},    {"s", true},         {"delta_tilde", false},
};

}  // namespace

PhysicalParams<double> params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object of parameters");
  PhysicalParams<double> p;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& f : kParamFields)
      if (key == f.key) {
        known = true;
        if (!value.is_number())
          throw ConfigError("config: key '" + key + "' must be a number");
        if (f.integer && !value.is_number_integer())
          throw ConfigError("config: key '" + key + "' must be an integer");
        break;
      }
    if (!known) throw ConfigError("config: unknown key '" + key + "'");
  }
  auto read = [&](const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
  };
  p.omega_t = read("omega_t", p.omega_t);
  p.Omega = read("Omega", p.Omega);
  p.kappa_ex = read("kappa_ex", p.kappa_ex);
  p.kappa_0 = read("kappa_0", p.kappa_0);
  p.gamma = read("gamma", p.gamma);
  p.g = read("g", p.g);
  p.N_t = read("N_t", p.N_t);
  p.zeta = read("zeta", p.zeta);
  p.T = read("T", p.T);
  p.T_m = read("T_m", p.T_m);
  if (j.contains("s")) p.s = j.at("s").get<int>();
  p.delta_tilde = read("delta_tilde", p.delta_tilde);
  return p;
}

nlohmann::json params_to_json(const PhysicalParams<double>& p) {
  return nlohmann::json{
      {"omega_t", p.omega_t}, {"Omega", p.Omega},     {"kappa_ex", p.kappa_ex},
      {"kappa_0", p.kappa_0}, {"gamma", p.gamma},     {"g", p.g},
      {"N_t", p.N_t},         {"zeta", p.zeta},       {"T", p.T},
      {"T_m", p.T_m},         {"s", p.s},             {"delta_tilde", p.delta_tilde}};
}

namespace {

Axis axis_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("values"))
    throw ConfigError("sweep config: axis needs 'name' and 'values'");
  Axis a;
  a.name = j.at("name").get<std::string>();
  for (const auto& v : j.at("values")) {
    if (!v.is_number()) throw ConfigError("sweep config: axis values must be numbers");
    a.values.push_back(v.get<double>());
  }
  return a;
}

nlohmann::json axis_to_json(const Axis& a) {
  return nlohmann::json{{"name", a.name}, {"values", a.values}};
}

}  // namespace

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("sweep config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "base" && key != "axis1" && key != "axis2" && key != "observables")
      throw ConfigError("sweep config: unknown key '" + key + "'");
  }
  if (!j.contains("axis1")) throw ConfigError("sweep config: missing 'axis1'");
  if (!j.contains("observables")) throw ConfigError("sweep config: missing 'observables'");
  SweepConfig c;
  c.base = j.contains("base") ? params_from_json(j.at("base")) : PhysicalParams<double>{};
  c.axis1 = axis_from_json(j.at("axis1"));
  if (j.contains("axis2")) c.axis2 = axis_from_json(j.at("axis2"));
  for (const auto& o : j.at("observables")) c.observables.push_back(o.get<std::string>());
  return c;
}

nlohmann::json sweep_config_to_json(const SweepConfig& c) {
  nlohmann::json j{{"base", params_to_json(c.base)},
                   {"axis1", axis_to_json(c.axis1)},
                   {"observables", c.observables}};
  if (c.axis2) j["axis2"] = axis_to_json(*c.axis2);
  return j;
}

FigurePreset figure_preset_from_json(const nlohmann::json& j) {
  FigurePreset fp;
  fp.name = j.at("name").get<std::string>();
  if (j.contains("spectrum")) {
    const auto& s = j.at("spectrum");
    fp.spectrum = SpectrumRequest{
        s.at("kind").get<std::string>(), s.at("omega_min_over_Omega").get<double>(),
        s.at("omega_max_over_Omega").get<double>(), s.at("points").get<int>()};
  }
  if (j.contains("axis")) fp.axis = axis_from_json(j.at("axis"));
  if (j.contains("axis_output")) {
    const auto& a = j.at("axis_output");
    fp.axis_output = AxisOutput{a.at("column").get<std::string>(),
                                a.at("scale").get<double>(), a.at("offset").get<double>()};
  }
  if (j.contains("observables"))
    for (const auto& o : j.at("observables")) fp.observables.push_back(o.get<std::string>());
  for (const auto& c : j.at("curves"))
    fp.curves.push_back(PresetCurve{c.at("label").get<std::string>(),
                                    params_from_json(c.at("params"))});
  return fp;
}

nlohmann::json figure_preset_to_json(const FigurePreset& fp) {
  nlohmann::json j{{"name", fp.name}};
  if (fp.spectrum)
    j["spectrum"] = nlohmann::json{{"kind", fp.spectrum->kind},
                                   {"omega_min_over_Omega", fp.spectrum->omega_min_over_Omega},
                                   {"omega_max_over_Omega", fp.spectrum->omega_max_over_Omega},
                                   {"points", fp.spectrum->points}};
  if (fp.axis) {
    j["axis"] = axis_to_json(*fp.axis);
    j["axis_output"] = nlohmann::json{{"column", fp.axis_output.column},
                                      {"scale", fp.axis_output.scale},
                                      {"offset", fp.axis_output.offset}};
  }
  if (!fp.observables.empty()) j["observables"] = fp.observables;
  auto curves = nlohmann::json::array();
  for (const auto& c : fp.curves)
    curves.push_back({{"label", c.label}, {"params", params_to_json(c.params)}});
  j["curves"] = curves;
  return j;
}

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is a 1-based offset into the input
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << origin << ": JSON parse error at line " << line << " column " << col << ": "
        << e.what();
    throw ConfigError(msg.str());
  }
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output file: " + path);
}

}  // namespace pbom
