#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace fine::cli {

namespace {

using nlohmann::json;

PairTable table_from_json(const json& j, const std::string& where,
                          double table_eps) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
      j[0].size() != 2 || j[1].size() != 2) {
    throw Error("at " + where + ": expected a 2x2 array of numbers");
  }
  PairTable t;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (!j[r][c].is_number()) {
        throw Error("at " + where + "[" + std::to_string(r) + "][" +
                    std::to_string(c) + "]: expected a number");
      }
      t.v[r][c] = j[r][c].get<double>();
    }
  }
  try {
    t.validate(table_eps);
  } catch (const Error& e) {
    throw ValidationError("at " + where + ": " + e.what());
  }
  return t;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("JSON parse error: ") + e.what());
  }
}

std::optional<double> read_tolerance(const json& root) {
  if (!root.contains("tolerance")) return std::nullopt;
  if (!root["tolerance"].is_number()) {
    throw Error("at tolerance: expected a number");
  }
  return root["tolerance"].get<double>();
}

void append_table(JsonWriter& w, const PairTable& t) {
  w.begin_array();
  for (int r = 0; r < 2; ++r) {
    w.begin_array();
    w.value(t.v[r][0]);
    w.value(t.v[r][1]);
    w.end_array();
  }
  w.end_array();
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::separator() {
  if (need_comma_) out_ += ", ";
  need_comma_ = false;
}

void JsonWriter::begin_object() {
  separator();
  out_ += '{';
}

void JsonWriter::end_object() {
  out_ += '}';
  need_comma_ = true;
}

void JsonWriter::begin_array() {
  separator();
  out_ += '[';
}

void JsonWriter::end_array() {
  out_ += ']';
  need_comma_ = true;
}

void JsonWriter::key(const std::string& k) {
  separator();
  out_ += '"';
  out_ += k;
  out_ += "\": ";
}

void JsonWriter::value(double v) {
  separator();
  out_ += format_double(v);
  need_comma_ = true;
}

void JsonWriter::value(const std::string& v) {
  separator();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
  need_comma_ = true;
}

void JsonWriter::value(bool v) {
  separator();
  out_ += v ? "true" : "false";
  need_comma_ = true;
}

void JsonWriter::value_raw(const std::string& raw) {
  separator();
  out_ += raw;
  need_comma_ = true;
}

MarginalsFile parse_marginals(const std::string& text,
                              std::optional<double> force_eps,
                              double fallback_eps) {
  const json root = parse_text(text);
  if (!root.is_object() || !root.contains("pairs") ||
      !root["pairs"].is_object()) {
    throw Error("expected an object with a \"pairs\" member");
  }
  MarginalsFile f;
  f.tolerance = read_tolerance(root);
  const double eps =
      force_eps ? *force_eps : f.tolerance.value_or(fallback_eps);
  const json& pairs = root["pairs"];
  for (const char* k : {"13", "14", "23", "24"}) {
    if (!pairs.contains(k)) {
      throw Error(std::string("missing pair table \"") + k + "\"");
    }
  }
  f.pm.m13 = table_from_json(pairs["13"], "pairs.13", eps);
  f.pm.m14 = table_from_json(pairs["14"], "pairs.14", eps);
  f.pm.m23 = table_from_json(pairs["23"], "pairs.23", eps);
  f.pm.m24 = table_from_json(pairs["24"], "pairs.24", eps);
  f.pm.validate(eps);
  return f;
}

BellMarginalsFile parse_bell_marginals(const std::string& text,
                                       std::optional<double> force_eps,
                                       double fallback_eps) {
  const json root = parse_text(text);
  if (!root.is_object() || !root.contains("pairs") ||
      !root["pairs"].is_object()) {
    throw Error("expected an object with a \"pairs\" member");
  }
  BellMarginalsFile f;
  f.tolerance = read_tolerance(root);
  const double eps =
      force_eps ? *force_eps : f.tolerance.value_or(fallback_eps);
  const json& pairs = root["pairs"];
  for (const char* k : {"12", "13", "23"}) {
    if (!pairs.contains(k)) {
      throw Error(std::string("missing pair table \"") + k + "\"");
    }
  }
  f.m12 = table_from_json(pairs["12"], "pairs.12", eps);
  f.m13 = table_from_json(pairs["13"], "pairs.13", eps);
  f.m23 = table_from_json(pairs["23"], "pairs.23", eps);
  return f;
}

std::string marginals_to_json(const PairMarginals& pm, double tolerance) {
  JsonWriter w;
  w.begin_object();
  w.key("pairs");
  w.begin_object();
  w.key("13");
  append_table(w, pm.m13);
  w.key("14");
  append_table(w, pm.m14);
  w.key("23");
  append_table(w, pm.m23);
  w.key("24");
  append_table(w, pm.m24);
  w.end_object();
  w.key("tolerance");
  w.value(tolerance);
  w.end_object();
  std::string out = w.take();
  out += '\n';
  return out;
}

JointDist4 parse_witness(const std::string& text, double eps_neg) {
  const json root = parse_text(text);
  if (!root.is_object() || !root.contains("p") || !root["p"].is_array() ||
      root["p"].size() != kNumConfigs) {
    throw Error("expected an object with a 16-entry \"p\" array");
  }
  std::array<double, kNumConfigs> p{};
  for (int i = 0; i < kNumConfigs; ++i) {
    if (!root["p"][i].is_number()) {
      throw Error("at p[" + std::to_string(i) + "]: expected a number");
    }
    p[i] = root["p"][i].get<double>();
  }
  return JointDist4::validated(p, eps_neg);
}

std::string witness_to_json(const JointDist4& d) {
  JsonWriter w;
  w.begin_object();
  w.key("order");
  w.value("lexicographic +1-first");
  w.key("p");
  w.begin_array();
  for (double x : d.p) w.value(x);
  w.end_array();
  w.end_object();
  std::string out = w.take();
  out += '\n';
  return out;
}

std::string bell_witness_to_json(const BellJoint& d) {
  JsonWriter w;
  w.begin_object();
  w.key("order");
  w.value("lexicographic +1-first");
  w.key("p");
  w.begin_array();
  for (double x : d.p) w.value(x);
  w.end_array();
  w.end_object();
  std::string out = w.take();
  out += '\n';
  return out;
}

Mat4 parse_density_matrix(const std::string& text) {
  const json root = parse_text(text);
  if (!root.is_object() || !root.contains("rho_re")) {
    throw Error("expected an object with a \"rho_re\" member (4x4 array)");
  }
  const auto grid = [&](const char* key) {
    std::array<std::array<double, 4>, 4> g{};
    const json& j = root[key];
    if (!j.is_array() || j.size() != 4) {
      throw Error(std::string("at ") + key + ": expected a 4x4 array");
    }
    for (int r = 0; r < 4; ++r) {
      if (!j[r].is_array() || j[r].size() != 4) {
        throw Error(std::string("at ") + key + "[" + std::to_string(r) +
                    "]: expected 4 numbers");
      }
      for (int c = 0; c < 4; ++c) {
        if (!j[r][c].is_number()) {
          throw Error(std::string("at ") + key + "[" + std::to_string(r) +
                      "][" + std::to_string(c) + "]: expected a number");
        }
        g[r][c] = j[r][c].get<double>();
      }
    }
    return g;
  };
  const auto re = grid("rho_re");
  std::array<std::array<double, 4>, 4> im{};
  if (root.contains("rho_im")) im = grid("rho_im");
  Mat4 rho;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) rho.at(r, c) = cplx(re[r][c], im[r][c]);
  }
  return rho;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  out << content;
}

Vec3 planar_direction_deg(double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  return {std::sin(rad), 0.0, std::cos(rad)};
}

}  // namespace fine::cli
