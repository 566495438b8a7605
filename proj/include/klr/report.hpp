#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "klr/cartan_data.hpp"
#include "klr/check.hpp"
#include "klr/cyclotomic.hpp"
#include "klr/scalar.hpp"

namespace klr {

inline constexpr const char* kEngineVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { ConfigParse, IoFailure };
  ConfigError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct QOverride {
  int i = 0;  // 1-based
  int j = 0;
  std::vector<std::tuple<int, int, std::string>> terms;  // u power, v power, rational coefficient
};

struct SuiteFlags {
  bool validate = true;
  bool nilhecke = false;
  bool build = true;
  bool cocenter = true;
  bool verify = true;
};

struct JobConfig {
  std::vector<Field> fields{Field::rationals()};
  IntMatrix cartan;
  std::optional<std::vector<int>> symmetrizers;
  std::vector<QOverride> q_overrides;
  std::vector<int> lambda;
  std::vector<int> alpha;
  std::optional<int> initial_bound;
  int max_escalations = 2;
  SuiteFlags suites;
  int nilhecke_max_n = 5;
  int nilhecke_samples = 200;
  std::uint64_t seed = 1;

  CartanDatum datum() const;
  QMatrix q_matrix(const CartanDatum& c) const;
  nlohmann::json to_json() const;
};

JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);

struct CheckRecord {
  std::string instance;
  CheckResult result;
  double seconds = 0;
};

/// Graded tables and headline numbers for one built algebra.
struct InstanceSummary {
  std::string instance;
  std::string field;
  std::size_t dim = 0;
  GradedDims algebra_dims;
  GradedDims cocenter_dims;
  GradedDims center_dims;
  std::size_t weight_multiplicity = 0;
  int d_lambda_alpha = 0;
  std::vector<std::string> piecewise_dominant;
  std::size_t top_degree_dim = 0;
  TruncationCertificate certificate;
};

class VerificationReport {
 public:
  std::vector<CheckRecord> records;
  std::vector<InstanceSummary> instances;
  nlohmann::json config_echo;

  void add(const std::string& instance, CheckResult r, double seconds);
  std::size_t count(CheckResult::Status s) const;
  bool all_passed() const { return count(CheckResult::Status::Fail) == 0; }
  nlohmann::json to_json(bool with_timing = true) const;
};

std::string instance_label(const CartanDatum& c, const std::vector<int>& lambda, const std::vector<int>& alpha, const Field& f);

/// Datum, symmetrizers and Q over every configured field.
CheckResult validate_inputs(const JobConfig& cfg);

/// Relations, traces and nilHecke identities for 1 <= n <= max_n over one field.
std::vector<CheckResult> nilhecke_suite(const Field& f, int max_n, int samples, std::uint64_t seed);

/// Associativity, unit, idempotents, cyclotomic generators, nilpotency,
/// degree additivity and the anti-involution.
CheckResult check_algebra_invariants(const CyclotomicAlgebra& a, std::size_t exhaustive_dim = 40, std::uint64_t seed = 1);
/// Every defining relation of R_alpha normal-forms to zero.
CheckResult check_klr_relations(const KlrAlgebra& r);
/// Closed form for a rank-one datum; skipped otherwise.
CheckResult check_rank_one(const CyclotomicAlgebra& a, std::size_t tr0_dim);
/// Top cocenter degree is one-dimensional; asserted only for simply-laced
/// finite type over Q on nonzero algebras, reported otherwise.
CheckResult check_top_degree_cocenter(const CyclotomicAlgebra& a, std::size_t top_dim);

enum class Stage { Build, Cocenter, Verify };

/// Builds the algebra over f and runs the checks up to the given stage.
/// Returns the graded dimensions of the algebra, or nullopt when the build failed.
std::optional<GradedDims> run_instance(const JobConfig& cfg, const Field& f, Stage stage, VerificationReport& report);

/// Everything selected in cfg.suites over every configured field.
VerificationReport run_job(const JobConfig& cfg);

}  // namespace klr
