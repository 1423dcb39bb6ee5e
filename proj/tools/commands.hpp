#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fine::cli {

// Exit code contract: 0 pass/feasible, 1 usage/parse/validation error,
// 2 infeasible or inequality violation, 3 method-specific failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitMethodFailure = 3;

struct GlobalOptions {
  bool strict = false;
  std::optional<double> tolerance;

  // Effective tolerances; --strict tightens everything tenfold.
  double factor() const { return strict ? 0.1 : 1.0; }
  double table_eps() const;  // user tables and consistency
  double pass_eps() const;   // inequality pass slack
  double neg_eps() const;    // witness negativity slack
  std::optional<double> force_table_eps() const;
};

struct CheckArgs {
  std::string file;
  std::optional<std::string> out;
};
int run_check(const GlobalOptions& g, const CheckArgs& a);

struct ConstructArgs {
  std::string file;
  std::string method = "algebraic";  // algebraic | peres | maxent | lp
  std::optional<std::string> out;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  int max_iter = 200;
  double tol = 1e-10;
};
int run_construct(const GlobalOptions& g, const ConstructArgs& a);

struct BellArgs {
  std::string file;
  std::string method = "algebraic";  // algebraic | lp
  std::optional<std::string> out;
};
int run_bell(const GlobalOptions& g, const BellArgs& a);

struct QuantumGenArgs {
  std::string state = "singlet";  // singlet | maximally-mixed | <matrix file>
  std::optional<std::string> angles;   // degrees, "a1,a2,a3,a4"
  std::optional<std::string> vectors;  // "x1,y1,z1,...,z4"
  bool zero_mean = false;
  std::string out;
};
int run_quantum_gen(const GlobalOptions& g, const QuantumGenArgs& a);

struct PeresSimArgs {
  std::optional<std::string> angles;   // radians, "t13,t23,t24,t14"
  std::optional<std::string> vectors;  // "x1,y1,z1,...,z4"
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
};
int run_peres_sim(const GlobalOptions& g, const PeresSimArgs& a);

struct MaxEntArgs {
  std::string file;
  std::optional<std::string> out;
  int max_iter = 200;
  double tol = 1e-10;
};
int run_maxent(const GlobalOptions& g, const MaxEntArgs& a);

struct OracleArgs {
  std::string file;
  std::optional<std::string> out;
};
int run_oracle(const GlobalOptions& g, const OracleArgs& a);

}  // namespace fine::cli
