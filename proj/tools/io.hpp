#pragma once

#include <array>
#include <optional>
#include <string>

#include "fine/construct.hpp"
#include "fine/moments.hpp"
#include "fine/quantum.hpp"
#include "fine/vec3.hpp"

namespace fine::cli {

// All numbers in emitted files are printed with 17 significant digits so
// that parsing them back reproduces the exact double.
std::string format_double(double v);

// Small append-only JSON writer; key order is fixed by call order, which
// keeps output byte-identical for identical inputs.
class JsonWriter {
public:
  std::string take() { return std::move(out_); }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(double v);
  void value(const std::string& v);
  void value(const char* v) { value(std::string(v)); }
  void value(bool v);
  void value_raw(const std::string& raw);

private:
  void separator();
  std::string out_;
  bool need_comma_ = false;
};

struct MarginalsFile {
  PairMarginals pm;
  std::optional<double> tolerance;
};

struct BellMarginalsFile {
  PairTable m12, m13, m23;
  std::optional<double> tolerance;
};

// Parsers throw fine::Error with a location-anchored message on malformed
// input. Table invariants are checked with force_eps when given, else the
// file's declared tolerance, else fallback_eps.
MarginalsFile parse_marginals(const std::string& text,
                              std::optional<double> force_eps,
                              double fallback_eps);
BellMarginalsFile parse_bell_marginals(const std::string& text,
                                       std::optional<double> force_eps,
                                       double fallback_eps);

std::string marginals_to_json(const PairMarginals& pm, double tolerance);

JointDist4 parse_witness(const std::string& text, double eps_neg);
std::string witness_to_json(const JointDist4& d);
std::string bell_witness_to_json(const BellJoint& d);

// Explicit density matrix file: {"rho_re": 4x4, "rho_im": 4x4 (optional)}.
Mat4 parse_density_matrix(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Direction at the given angle (degrees) from the z axis in the xz plane.
Vec3 planar_direction_deg(double degrees);

}  // namespace fine::cli
