#include "klr/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "klr/cocenter.hpp"
#include "klr/highest_weight.hpp"
#include "klr/nilhecke.hpp"
#include "klr/piecewise.hpp"

namespace klr {

using json = nlohmann::json;

namespace {

ConfigError parse_error(const std::string& what) { return ConfigError(ConfigError::Kind::ConfigParse, what); }

std::vector<int> int_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw parse_error("'" + key + "' must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw parse_error("'" + key + "' must contain integers only");
    out.push_back(v.get<int>());
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

json dims_json(const GradedDims& g) {
  json out = json::array();
  for (const auto& [d, n] : g.map()) out.push_back({d, n});
  return out;
}

std::string config_label(const JobConfig& cfg) {
  std::string s = "cartan=[";
  for (std::size_t i = 0; i < cfg.cartan.size(); ++i) {
    std::string row = join_ints(cfg.cartan[i]);
    s += (i ? ",[" : "[") + row.substr(1, row.size() - 2) + "]";
  }
  return s + "] lambda=" + join_ints(cfg.lambda) + " alpha=" + join_ints(cfg.alpha);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs a check, turning any thrown module error into a failure under id.
CheckResult guarded(const std::string& id, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    CheckResult r;
    r.id = id;
    r.fail(std::string("error: ") + e.what());
    return r;
  }
}

}  // namespace

CartanDatum JobConfig::datum() const { return CartanDatum::validate(cartan, symmetrizers); }

QMatrix JobConfig::q_matrix(const CartanDatum& c) const {
  QMatrix q = QMatrix::default_for(c);
  for (const QOverride& o : q_overrides) {
    if (o.i < 1 || o.j < 1 || o.i > static_cast<int>(c.rank()) || o.j > static_cast<int>(c.rank()))
      throw parse_error("q override index out of range");
    std::vector<std::tuple<int, int, mpq_class>> terms;
    for (const auto& [k, p, coeff] : o.terms) {
      mpq_class v;
      if (v.set_str(coeff, 10) != 0) throw parse_error("bad rational '" + coeff + "'");
      v.canonicalize();
      terms.emplace_back(k, p, v);
    }
    q.set_pair(o.i - 1, o.j - 1, terms);
  }
  return q;
}

json JobConfig::to_json() const {
  json j;
  json fs = json::array();
  for (const Field& f : fields) fs.push_back(f.name());
  j["fields"] = fs;
  j["cartan"] = cartan;
  j["symmetrizers"] = symmetrizers ? json(*symmetrizers) : json(nullptr);
  json qs = json::array();
  for (const QOverride& o : q_overrides) {
    json terms = json::array();
    for (const auto& [k, p, c] : o.terms) terms.push_back({k, p, c});
    qs.push_back({{"i", o.i}, {"j", o.j}, {"terms", terms}});
  }
  j["q_overrides"] = qs;
  j["lambda"] = lambda;
  j["alpha"] = alpha;
  j["bound"] = initial_bound ? json(*initial_bound) : json(nullptr);
  j["max_escalations"] = max_escalations;
  j["suites"] = {{"validate", suites.validate},
                 {"nilhecke", suites.nilhecke},
                 {"build", suites.build},
                 {"cocenter", suites.cocenter},
                 {"verify", suites.verify}};
  j["nilhecke"] = {{"max_n", nilhecke_max_n}, {"samples", nilhecke_samples}, {"seed", seed}};
  return j;
}

JobConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(e.what());
  }
  if (!j.is_object()) throw parse_error("config must be an object");
  static const std::set<std::string> known{"fields", "cartan", "symmetrizers", "q_overrides", "lambda", "alpha",
                                           "bound",  "max_escalations", "suites", "nilhecke"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw parse_error("unknown key '" + k + "'");

  JobConfig cfg;
  if (j.contains("fields")) {
    const json& fs = j["fields"];
    std::vector<std::string> names;
    if (fs.is_string()) {
      names.push_back(fs.get<std::string>());
    } else if (fs.is_array()) {
      for (const auto& v : fs) {
        if (!v.is_string()) throw parse_error("'fields' must contain strings");
        names.push_back(v.get<std::string>());
      }
    } else {
      throw parse_error("'fields' must be a string or an array");
    }
    if (names.empty()) throw parse_error("'fields' is empty");
    cfg.fields.clear();
    for (const auto& s : names) {
      try {
        cfg.fields.push_back(Field::parse(s));
      } catch (const ArithmeticError& e) {
        throw parse_error(e.what());
      }
    }
  }
  if (!j.contains("cartan")) throw parse_error("missing 'cartan'");
  if (!j["cartan"].is_array() || j["cartan"].empty()) throw parse_error("'cartan' must be a non-empty array of rows");
  for (const auto& row : j["cartan"]) cfg.cartan.push_back(int_list(row, "cartan"));
  for (const auto& row : cfg.cartan)
    if (row.size() != cfg.cartan.size()) throw parse_error("'cartan' must be square");
  if (j.contains("symmetrizers") && !j["symmetrizers"].is_null()) cfg.symmetrizers = int_list(j["symmetrizers"], "symmetrizers");
  if (j.contains("q_overrides")) {
    if (!j["q_overrides"].is_array()) throw parse_error("'q_overrides' must be an array");
    for (const auto& o : j["q_overrides"]) {
      QOverride q;
      try {
        q.i = o.at("i").get<int>();
        q.j = o.at("j").get<int>();
        for (const auto& t : o.at("terms")) {
          if (!t.is_array() || t.size() != 3) throw parse_error("q term must be [u power, v power, coefficient]");
          std::string c = t[2].is_string() ? t[2].get<std::string>() : std::to_string(t[2].get<long>());
          q.terms.emplace_back(t[0].get<int>(), t[1].get<int>(), c);
        }
      } catch (const json::exception& e) {
        throw parse_error(std::string("bad q override: ") + e.what());
      }
      cfg.q_overrides.push_back(q);
    }
  }
  if (!j.contains("lambda")) throw parse_error("missing 'lambda'");
  if (!j.contains("alpha")) throw parse_error("missing 'alpha'");
  cfg.lambda = int_list(j["lambda"], "lambda");
  cfg.alpha = int_list(j["alpha"], "alpha");
  try {
    if (j.contains("bound") && !j["bound"].is_null()) cfg.initial_bound = j["bound"].get<int>();
    if (j.contains("max_escalations")) cfg.max_escalations = j["max_escalations"].get<int>();
    if (j.contains("suites")) {
      const json& s = j["suites"];
      for (const auto& [k, v] : s.items()) {
        bool on = v.get<bool>();
        if (k == "validate") cfg.suites.validate = on;
        else if (k == "nilhecke") cfg.suites.nilhecke = on;
        else if (k == "build") cfg.suites.build = on;
        else if (k == "cocenter") cfg.suites.cocenter = on;
        else if (k == "verify") cfg.suites.verify = on;
        else throw parse_error("unknown suite '" + k + "'");
      }
    }
    if (j.contains("nilhecke")) {
      const json& nh = j["nilhecke"];
      cfg.nilhecke_max_n = nh.value("max_n", cfg.nilhecke_max_n);
      cfg.nilhecke_samples = nh.value("samples", cfg.nilhecke_samples);
      cfg.seed = nh.value("seed", cfg.seed);
    }
  } catch (const json::exception& e) {
    throw parse_error(e.what());
  }
  if (cfg.initial_bound && *cfg.initial_bound < 1) throw parse_error("'bound' must be positive");
  if (cfg.max_escalations < 0) throw parse_error("'max_escalations' must be non-negative");
  if (cfg.nilhecke_max_n < 1 || cfg.nilhecke_max_n > 6) throw parse_error("nilhecke max_n must lie in [1, 6]");
  return cfg;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigError::Kind::IoFailure, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void VerificationReport::add(const std::string& instance, CheckResult r, double seconds) {
  records.push_back(CheckRecord{instance, std::move(r), seconds});
}

std::size_t VerificationReport::count(CheckResult::Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const CheckRecord& r) { return r.result.status == s; }));
}

json VerificationReport::to_json(bool with_timing) const {
  json out;
  out["engine_version"] = kEngineVersion;
  out["config"] = config_echo;
  out["summary"] = {{"PASS", count(CheckResult::Status::Pass)},
                    {"FAIL", count(CheckResult::Status::Fail)},
                    {"SKIP", count(CheckResult::Status::Skip)},
                    {"total", records.size()},
                    {"status", all_passed() ? "PASS" : "FAIL"}};
  json checks = json::array();
  for (const CheckRecord& rec : records) {
    json c;
    c["check"] = rec.result.id;
    c["instance"] = rec.instance;
    c["status"] = status_name(rec.result.status);
    json w = json::object();
    for (const auto& [k, v] : rec.result.witnesses) w[k] = v;
    c["witnesses"] = w;
    c["failures"] = rec.result.failures;
    c["notes"] = rec.result.notes;
    if (with_timing) c["seconds"] = rec.seconds;
    checks.push_back(c);
  }
  out["checks"] = checks;
  json insts = json::array();
  for (const InstanceSummary& s : instances) {
    json i;
    i["instance"] = s.instance;
    i["field"] = s.field;
    i["dim"] = s.dim;
    i["graded_dims"] = {{"algebra", dims_json(s.algebra_dims)},
                        {"cocenter", dims_json(s.cocenter_dims)},
                        {"center", dims_json(s.center_dims)}};
    i["weight_multiplicity"] = s.weight_multiplicity;
    i["d_lambda_alpha"] = s.d_lambda_alpha;
    i["piecewise_dominant"] = s.piecewise_dominant;
    i["top_degree_cocenter_dim"] = s.top_degree_dim;
    const TruncationCertificate& c = s.certificate;
    i["certificate"] = {{"bound", c.bound},
                        {"attempted_bounds", c.attempted_bounds},
                        {"nilpotency_witness", c.nilpotency_witness},
                        {"ambient_dim", c.ambient_dim},
                        {"exact_rank", c.exact_rank},
                        {"ideal_rank", c.ideal_rank},
                        {"oracle_dimension", c.oracle_dimension ? json(*c.oracle_dimension) : json(nullptr)}};
    insts.push_back(i);
  }
  out["instances"] = insts;
  return out;
}

std::string instance_label(const CartanDatum& c, const std::vector<int>& lambda, const std::vector<int>& alpha, const Field& f) {
  return "cartan=" + c.to_string() + " lambda=" + join_ints(lambda) + " alpha=" + join_ints(alpha) + " field=" + f.name();
}

CheckResult validate_inputs(const JobConfig& cfg) {
  CheckResult r;
  r.id = "validate_inputs";
  CartanDatum c;
  try {
    c = cfg.datum();
  } catch (const CartanError& e) {
    r.fail(std::string(CartanError::kind_name(e.kind())) + ": " + e.what());
    return r;
  }
  r.witness("cartan", c.to_string());
  r.witness("symmetrizers", join_ints(c.symmetrizers()));
  r.witness("simply_laced", c.simply_laced() ? "yes" : "no");
  r.witness("finite_type", c.finite_type() ? "yes" : "no");
  try {
    make_weight(c, cfg.lambda);
    make_root(c, cfg.alpha);
  } catch (const CartanError& e) {
    r.fail(std::string(CartanError::kind_name(e.kind())) + ": " + e.what());
    return r;
  }
  QMatrix q;
  try {
    q = cfg.q_matrix(c);
  } catch (const std::exception& e) {
    r.fail(e.what());
    return r;
  }
  for (const Field& f : cfg.fields) {
    for (const QValidationIssue& issue : validate_q_matrix(q, c, f))
      r.fail(f.name() + " " + QValidationIssue::kind_name(issue.kind) + ": " + issue.message);
  }
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j)
      if (i != j) r.witness("Q" + std::to_string(i + 1) + std::to_string(j + 1), q.to_string(static_cast<int>(i), static_cast<int>(j)));
  return r;
}

namespace {

NilHeckeElement nh_word(const Field& f, int n, const NhWord& w) { return NilHeckeElement::word(f, n, w, Scalar::one(f)); }

ExactPolynomial random_poly(const Field& f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 5), deg(0, 6), var(0, n - 1), coeff(-4, 4);
  ExactPolynomial p(f, n);
  int t = nterms(rng);
  for (int s = 0; s < t; ++s) {
    std::vector<int> e(n, 0);
    int d = deg(rng);
    for (int i = 0; i < d; ++i) ++e[var(rng)];
    p += ExactPolynomial::monomial(f, n, e, Scalar::from_int(f, coeff(rng)));
  }
  return p;
}

NhWord random_word(int n, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 1), xi(1, n), ti(1, std::max(1, n - 1));
  NhWord w;
  for (int i = 0; i < len; ++i) {
    if (n > 1 && kind(rng)) w.push_back({NhLetter::Kind::Tau, ti(rng)});
    else w.push_back({NhLetter::Kind::X, xi(rng)});
  }
  return w;
}

/// Pairs (lhs, rhs) for every defining relation of NH_n.
std::vector<std::tuple<std::string, NilHeckeElement, NilHeckeElement>> nh_relations(const Field& f, int n) {
  std::vector<std::tuple<std::string, NilHeckeElement, NilHeckeElement>> out;
  auto X = [&](int k) { return NilHeckeElement::x(f, n, k); };
  auto T = [&](int j) { return NilHeckeElement::tau(f, n, j); };
  NilHeckeElement zero(f, n), one = NilHeckeElement::identity(f, n);
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) out.emplace_back("x" + std::to_string(j) + "x" + std::to_string(k), X(j) * X(k), X(k) * X(j));
  for (int r = 1; r < n; ++r) out.emplace_back("tau" + std::to_string(r) + "^2", T(r) * T(r), zero);
  for (int i = 1; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      out.emplace_back("tau" + std::to_string(i) + "tau" + std::to_string(j), T(i) * T(j), T(j) * T(i));
  for (int r = 1; r + 1 < n; ++r)
    out.emplace_back("braid" + std::to_string(r), T(r) * T(r + 1) * T(r), T(r + 1) * T(r) * T(r + 1));
  for (int j = 1; j < n; ++j) {
    for (int k = 1; k <= n; ++k)
      if (k != j && k != j + 1)
        out.emplace_back("tau" + std::to_string(j) + "x" + std::to_string(k), T(j) * X(k), X(k) * T(j));
    out.emplace_back("tau" + std::to_string(j) + "x" + std::to_string(j + 1), T(j) * X(j + 1), X(j) * T(j) + one);
    out.emplace_back("x" + std::to_string(j + 1) + "tau" + std::to_string(j), X(j + 1) * T(j), T(j) * X(j) + one);
  }
  return out;
}

/// Compositions 1 = a_1 < ... < a_{d+1} = n+1 as the lists (a_1, ..., a_{d+1}).
std::vector<std::vector<int>> interval_splittings(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> a{1};
    for (int p = 2; p <= n; ++p)
      if (mask & (1u << (p - 2))) a.push_back(p);
    a.push_back(n + 1);
    out.push_back(a);
  }
  return out;
}

void distribute(int total, std::size_t parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    distribute(total - v, parts, cur, out);
    cur.pop_back();
  }
}

/// Traces as vectors over a shared monomial index.
class TraceCoords {
 public:
  explicit TraceCoords(const Field& f) : f_(f) {}
  SparseVec operator()(const ElementaryPoly& p) {
    SparseVec v;
    std::map<std::size_t, Scalar> m;
    for (const auto& [e, c] : p.terms()) {
      auto [it, inserted] = index_.emplace(e, index_.size());
      m.emplace(it->second, c);
    }
    for (const auto& [i, c] : m) v.push_back(i, c);
    return v;
  }
  const Field& field() const { return f_; }

 private:
  Field f_;
  std::map<Exponent, std::size_t> index_;
};

}  // namespace

std::vector<CheckResult> nilhecke_suite(const Field& f, int max_n, int samples, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  auto one = [&](int n) { return NilHeckeElement::identity(f, n); };

  out.push_back(guarded("nh_relations", [&] {
    CheckResult r;
    r.id = "nh_relations";
    std::size_t evaluations = 0;
    for (int n = 1; n <= max_n; ++n) {
      auto rels = nh_relations(f, n);
      for (int s = 0; s < samples; ++s) {
        ExactPolynomial p = random_poly(f, n, rng);
        if (p.is_zero()) continue;
        for (const auto& [name, lhs, rhs] : rels) {
          ++evaluations;
          if (act(lhs, p) != act(rhs, p)) r.fail("n=" + std::to_string(n) + " " + name + " on " + p.to_string());
        }
      }
    }
    r.witness("evaluations", std::to_string(evaluations));
    r.witness("samples_per_n", std::to_string(samples));
    return r;
  }));

  out.push_back(guarded("nh_matrix_model", [&] {
    CheckResult r;
    r.id = "nh_matrix_model";
    std::size_t pairs = 0;
    for (int n = 1; n <= std::min(max_n, 3); ++n) {
      for (int s = 0; s < 12; ++s) {
        std::uniform_int_distribution<int> len(0, 4);
        NilHeckeElement a = nh_word(f, n, random_word(n, len(rng), rng)) + nh_word(f, n, random_word(n, len(rng), rng));
        NilHeckeElement b = nh_word(f, n, random_word(n, len(rng), rng));
        ++pairs;
        if (!(to_sym_matrix(a * b) == to_sym_matrix(a) * to_sym_matrix(b)))
          r.fail("model(ab) != model(a)model(b) for a=" + a.to_string() + " b=" + b.to_string());
        if (nh_trace(a * b) != nh_trace(b * a)) r.fail("trace(ab) != trace(ba) for a=" + a.to_string() + " b=" + b.to_string());
      }
    }
    r.witness("pairs", std::to_string(pairs));
    return r;
  }));

  out.push_back(guarded("nh_interval_idempotents", [&] {
    CheckResult r;
    r.id = "nh_interval_idempotents";
    for (int n = 1; n <= max_n; ++n) {
      NilHeckeElement e = e_interval(f, n, 1, n);
      ExactPolynomial t = nh_trace(e);
      r.expect(t.is_constant() && t.constant_value().is_one(), "trace(e_[1," + std::to_string(n) + "]) = " + t.to_string());
      if (n > 4) continue;
      for (int u = 1; u <= n; ++u)
        for (int v = u; v <= n; ++v) {
          SymMatrixModel m = to_sym_matrix(e_interval(f, n, u, v));
          r.expect(m * m == m, "e_[" + std::to_string(u) + "," + std::to_string(v) + "] not idempotent at n=" + std::to_string(n));
        }
    }
    return r;
  }));

  out.push_back(guarded("nh_factorial_idempotent", [&] {
    CheckResult r;
    r.id = "nh_factorial_idempotent";
    for (int n = 2; n <= max_n; ++n) {
      long fact = 1;
      for (int i = 2; i <= n; ++i) fact *= i;
      r.expect(trace_equiv(e_interval(f, n, 1, n).scaled(fact), one(n)), "n!e_[1,n] vs 1 at n=" + std::to_string(n));
    }
    return r;
  }));

  out.push_back(guarded("nh_dot_crossing_reduction", [&] {
    CheckResult r;
    r.id = "nh_dot_crossing_reduction";
    for (int n = 2; n <= max_n; ++n)
      for (int k = 1; k <= 4; ++k)
        r.expect(trace_equiv(X_kn(f, n, k), e_interval(f, n, 1, n) * NilHeckeElement::x(f, n, n, k - 1)),
                 "n=" + std::to_string(n) + " k=" + std::to_string(k));
    return r;
  }));

  out.push_back(guarded("nh_low_dot_commutator", [&] {
    CheckResult r;
    r.id = "nh_low_dot_commutator";
    for (int n = 2; n <= max_n; ++n)
      for (int k = 0; k < n - 1; ++k)
        r.expect(nh_trace(Z_nk(f, n, k)).is_zero(), "trace(Z) != 0 at n=" + std::to_string(n) + " k=" + std::to_string(k));
    return r;
  }));

  out.push_back(guarded("nh_high_dot_span", [&] {
    CheckResult r;
    r.id = "nh_high_dot_span";
    std::size_t cases = 0;
    for (int n = 2; n <= std::min(max_n, 4); ++n) {
      for (int k = n - 1; k <= n + 1; ++k) {
        TraceCoords coords(f);
        EchelonBasis span(f);
        for (const auto& a : interval_splittings(n)) {
          std::size_t d = a.size() - 1;
          std::vector<std::vector<int>> ls;
          std::vector<int> cur;
          distribute(k - (n - 1), d, cur, ls);
          for (const auto& l : ls) {
            NilHeckeElement prod = one(n);
            for (std::size_t j = 0; j < d; ++j)
              prod = prod * e_interval(f, n, a[j], a[j + 1] - 1) * NilHeckeElement::x(f, n, a[j + 1] - 1, l[j]);
            span.insert(coords(nh_trace_elementary(prod)));
          }
        }
        ++cases;
        r.expect(span.contains(coords(nh_trace_elementary(Z_nk(f, n, k)))),
                 "trace(Z) outside the span at n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
    r.witness("cases", std::to_string(cases));
    return r;
  }));

  out.push_back(guarded("nh_top_dot_constant", [&] {
    CheckResult r;
    r.id = "nh_top_dot_constant";
    for (int n = 2; n <= max_n; ++n) {
      ExactPolynomial t = nh_trace(Z_nk(f, n, n - 1));
      if (!t.is_constant() && !t.is_zero()) {
        r.fail("trace(Z(n,n-1)) not constant at n=" + std::to_string(n) + ": " + t.to_string());
        continue;
      }
      r.witness("constant_n" + std::to_string(n), t.is_zero() ? "0" : t.constant_value().to_string());
      for (const auto& a : interval_splittings(n)) {
        NilHeckeElement prod = one(n);
        for (std::size_t j = 0; j + 1 < a.size(); ++j) prod = prod * e_interval(f, n, a[j], a[j + 1] - 1);
        ExactPolynomial tp = nh_trace(prod);
        r.expect(tp.is_zero() || tp.is_constant(), "trace of interval product not constant at n=" + std::to_string(n));
      }
    }
    return r;
  }));

  out.push_back(guarded("nh_shifted_dot", [&] {
    CheckResult r;
    r.id = "nh_shifted_dot";
    const int n = 5, t = 1, l = 5;
    if (max_n < n) {
      r.status = CheckResult::Status::Skip;
      r.notes.push_back("needs n = 5");
      return r;
    }
    for (int k = 1; k <= 2; ++k)
      for (int b = 1; b <= 2; ++b) {
        NilHeckeElement X = X_ktl(f, n, k, t, l);
        NilHeckeElement tau = NilHeckeElement::tau(f, n, l - (t + 1));
        NilHeckeElement lhs = NilHeckeElement::x(f, n, l - b * (t + 1)) * X * tau;
        NilHeckeElement rhs = NilHeckeElement::x(f, n, l - (t + 1)) * X * tau;
        r.expect(trace_equiv(lhs, rhs), "k=" + std::to_string(k) + " b=" + std::to_string(b));
      }
    return r;
  }));

  for (auto& r : out) r.witness("field", f.name());
  return out;
}

CheckResult check_algebra_invariants(const CyclotomicAlgebra& a, std::size_t exhaustive_dim, std::uint64_t seed) {
  CheckResult r;
  r.id = "algebra_invariants";
  const std::size_t dim = a.dim();
  r.witness("dim", std::to_string(dim));
  if (a.is_zero_algebra()) {
    r.witness("zero_algebra", "yes");
    return r;
  }
  std::mt19937_64 rng(seed);

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (const auto& [k, c] : a.product(i, j).entries)
        if (a.degrees[k] != a.degrees[i] + a.degrees[j]) r.fail("degree of b" + std::to_string(i) + "*b" + std::to_string(j));

  auto triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    SparseVec lhs = a.multiply(a.product(i, j), a.basis_vector(k));
    SparseVec rhs = a.multiply(a.basis_vector(i), a.product(j, k));
    if (!(lhs == rhs)) r.fail("associativity at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
  };
  std::size_t triples = 0;
  if (dim <= exhaustive_dim) {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) triple(i, j, k), ++triples;
    r.witness("associativity", "exhaustive");
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    for (int s = 0; s < 4000; ++s) triple(pick(rng), pick(rng), pick(rng)), ++triples;
    r.witness("associativity", "sampled");
  }
  r.witness("triples", std::to_string(triples));

  for (std::size_t i = 0; i < dim; ++i) {
    SparseVec b = a.basis_vector(i);
    if (!(a.multiply(a.identity, b) == b) || !(a.multiply(b, a.identity) == b)) r.fail("unit fails on b" + std::to_string(i));
  }
  SparseVec sum;
  for (std::size_t s = 0; s < a.idempotents.size(); ++s) {
    sum = sum + a.idempotents[s];
    for (std::size_t t = 0; t < a.idempotents.size(); ++t) {
      SparseVec p = a.multiply(a.idempotents[s], a.idempotents[t]);
      bool ok = s == t ? p == a.idempotents[s] : p.empty();
      if (!ok) r.fail("e(" + sequence_to_string(a.sequences[s]) + ") e(" + sequence_to_string(a.sequences[t]) + ")");
    }
  }
  r.expect(sum == a.identity, "idempotents do not sum to 1");

  for (std::size_t s = 0; s < a.sequences.size(); ++s) {
    if (a.sequences[s].empty()) continue;
    int m = a.lambda.coeffs[a.sequences[s][0]];
    GenWord g;
    g.source = static_cast<std::uint16_t>(s);
    for (int i = 0; i < m; ++i) g.letters.push_back({GenLetter::Kind::X, 1});
    r.expect(a.word_image(g).empty(), "cyclotomic generator nonzero on " + sequence_to_string(a.sequences[s]));
  }

  int worst = 0;
  for (int k = 1; k <= a.n(); ++k) {
    SparseVec p = a.x_images[k - 1];
    int e = 1;
    while (!p.empty() && e <= static_cast<int>(dim) + 1) p = a.multiply(p, a.x_images[k - 1]), ++e;
    if (!p.empty()) r.fail("x" + std::to_string(k) + " not nilpotent");
    worst = std::max(worst, e);
  }
  r.witness("x_nilpotency_index", std::to_string(worst));

  if (!a.presentation) {
    r.notes.push_back("no build presentation; anti-involution not checked");
    return r;
  }
  const CyclotomicPresentation& pres = *a.presentation;
  const KlrAlgebra& klr = *pres.klr;
  std::vector<NormalMonomial> basis_mono(dim);
  for (std::size_t idx = 0; idx < pres.monomials.size(); ++idx)
    if (pres.basis_position[idx] >= 0) basis_mono[static_cast<std::size_t>(pres.basis_position[idx])] = pres.monomials[idx];
  std::vector<SparseVec> star_of(dim);
  for (std::size_t k = 0; k < dim; ++k) star_of[k] = a.image(klr.star(klr.element(basis_mono[k])));
  auto star = [&](const SparseVec& v) {
    SparseVec out;
    for (const auto& [k, c] : v.entries) out.axpy(c, star_of[k]);
    return out;
  };
  for (std::size_t k = 0; k < dim; ++k)
    r.expect(star(star_of[k]) == a.basis_vector(k), "star is not an involution on b" + std::to_string(k));
  auto star_pair = [&](std::size_t i, std::size_t j) {
    if (!(star(a.product(i, j)) == a.multiply(star_of[j], star_of[i])))
      r.fail("star(b" + std::to_string(i) + " b" + std::to_string(j) + ") != star(b" + std::to_string(j) + ") star(b" + std::to_string(i) + ")");
  };
  if (dim <= exhaustive_dim) {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) star_pair(i, j);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    for (int s = 0; s < 1000; ++s) star_pair(pick(rng), pick(rng));
  }
  return r;
}

CheckResult check_klr_relations(const KlrAlgebra& klr) {
  CheckResult r;
  r.id = "klr_relations";
  auto rels = klr.relation_instances();
  for (const RelationInstance& ri : rels)
    if (!klr.normal_form(ri.combination).is_zero()) r.fail(ri.name + " does not vanish");
  r.witness("relations", std::to_string(rels.size()));
  return r;
}

CheckResult check_rank_one(const CyclotomicAlgebra& a, std::size_t tr0_dim) {
  CheckResult r;
  r.id = "rank_one_closed_form";
  auto oracle = rank_one_dimension(a.datum, a.lambda, a.alpha);
  if (!oracle) {
    r.status = CheckResult::Status::Skip;
    r.notes.push_back("datum is not rank one");
    return r;
  }
  int l = a.lambda.coeffs[0], n = a.alpha.coeffs[0];
  r.witness("oracle_dim", std::to_string(*oracle));
  r.witness("dim", std::to_string(a.dim()));
  r.expect(a.dim() == *oracle, "dimension differs from (n!)^2 binom(l, n)");
  if (n > l) {
    r.expect(a.is_zero_algebra(), "n > l but the algebra is nonzero");
    return r;
  }
  std::size_t mult = weight_multiplicity(a.lambda, a.alpha, a.datum);
  r.witness("tr0_dim", std::to_string(tr0_dim));
  r.witness("weight_multiplicity", std::to_string(mult));
  r.expect(tr0_dim == 1, "dim Tr_0 != 1");
  r.expect(mult == 1, "sl2 weight multiplicity != 1");
  return r;
}

CheckResult check_top_degree_cocenter(const CyclotomicAlgebra& a, std::size_t top_dim) {
  CheckResult r;
  r.id = "top_degree_cocenter";
  r.witness("d_lambda_alpha", std::to_string(algebra_d(a)));
  r.witness("top_degree_dim", std::to_string(top_dim));
  if (a.is_zero_algebra()) {
    r.status = CheckResult::Status::Skip;
    r.notes.push_back("zero algebra");
    return r;
  }
  if (!(a.datum.simply_laced() && a.datum.finite_type() && a.field.is_rational())) {
    r.status = CheckResult::Status::Skip;
    r.notes.push_back("reported only: expected value known for simply-laced finite type over Q");
    return r;
  }
  r.expect(top_dim == 1, "top degree of the cocenter is not one-dimensional");
  return r;
}

std::optional<GradedDims> run_instance(const JobConfig& cfg, const Field& f, Stage stage, VerificationReport& report) {
  std::string label = config_label(cfg) + " field=" + f.name();

  auto t0 = std::chrono::steady_clock::now();
  std::optional<CyclotomicAlgebra> built;
  CheckResult br;
  br.id = "build";
  try {
    CartanDatum c = cfg.datum();
    label = instance_label(c, cfg.lambda, cfg.alpha, f);
    BuildOptions opts;
    opts.initial_bound = cfg.initial_bound;
    opts.max_escalations = cfg.max_escalations;
    built = build_cyclotomic(c, cfg.q_matrix(c), make_weight(c, cfg.lambda), make_root(c, cfg.alpha), f, opts);
  } catch (const CyclotomicError& e) {
    static const char* names[] = {"NeedLargerB", "InconsistentClosure", "DimensionMismatch", "ParseError", "NoPresentation"};
    br.fail(std::string(names[static_cast<int>(e.kind())]) + ": " + e.what());
  } catch (const CartanError& e) {
    br.fail(std::string(CartanError::kind_name(e.kind())) + ": " + e.what());
  } catch (const std::exception& e) {
    br.fail(std::string("error: ") + e.what());
  }
  if (!built) {
    report.add(label, br, seconds_since(t0));
    return std::nullopt;
  }
  const CyclotomicAlgebra& a = *built;
  const TruncationCertificate& cert = a.certificate;
  br.witness("dim", std::to_string(a.dim()));
  br.witness("graded_dims", a.graded_dims().to_string());
  br.witness("bound", std::to_string(cert.bound));
  br.witness("nilpotency_witness", std::to_string(cert.nilpotency_witness));
  br.witness("ambient_dim", std::to_string(cert.ambient_dim));
  br.witness("ideal_rank", std::to_string(cert.ideal_rank));
  if (cert.oracle_dimension) br.witness("oracle_dimension", std::to_string(*cert.oracle_dimension));
  report.add(label, br, seconds_since(t0));

  InstanceSummary summary;
  summary.instance = label;
  summary.field = f.name();
  summary.dim = a.dim();
  summary.algebra_dims = a.graded_dims();
  summary.d_lambda_alpha = algebra_d(a);
  summary.certificate = cert;
  for (const Sequence& nu : enumerate_pd(a.alpha, a.lambda, a.datum)) summary.piecewise_dominant.push_back(sequence_to_string(nu));
  try {
    summary.weight_multiplicity = weight_multiplicity(a.lambda, a.alpha, a.datum);
  } catch (const HighestWeightError&) {
  }

  if (stage == Stage::Build) {
    report.instances.push_back(summary);
    return summary.algebra_dims;
  }

  t0 = std::chrono::steady_clock::now();
  CocenterSpace tr(a);
  CenterSpace z(a);
  CheckResult cr;
  cr.id = "cocenter_center";
  summary.cocenter_dims = tr.dims();
  summary.center_dims = z.dims();
  summary.top_degree_dim = summary.cocenter_dims.get(summary.d_lambda_alpha);
  cr.witness("cocenter_dims", summary.cocenter_dims.to_string());
  cr.witness("center_dims", summary.center_dims.to_string());
  cr.witness("commutator_dims", tr.commutator_dims().to_string());
  report.add(label, cr, seconds_since(t0));
  report.instances.push_back(summary);
  if (stage == Stage::Cocenter) return summary.algebra_dims;

  auto run = [&](const std::string& id, const std::function<CheckResult()>& body) {
    auto t = std::chrono::steady_clock::now();
    CheckResult res = guarded(id, body);
    report.add(label, std::move(res), seconds_since(t));
  };
  run("algebra_invariants", [&] { return check_algebra_invariants(a, 40, cfg.seed); });
  run("klr_relations", [&] { return check_klr_relations(*a.presentation->klr); });
  run("degree_support", [&] { return verify_degree_support(a, tr, z); });
  run("duality", [&] { return verify_duality(a, tr, z); });
  run("tr0_dimension", [&] { return verify_tr0_dimension(a, tr); });
  run("rank_one_closed_form", [&] { return check_rank_one(a, summary.cocenter_dims.get(0)); });
  {
    auto t = std::chrono::steady_clock::now();
    std::vector<CheckResult> spans;
    try {
      spans = verify_spans(a, tr);
    } catch (const std::exception& e) {
      CheckResult bad;
      bad.id = "spans";
      bad.fail(std::string("error: ") + e.what());
      spans.push_back(bad);
    }
    double s = seconds_since(t) / static_cast<double>(spans.size());
    for (auto& res : spans) report.add(label, std::move(res), s);
  }
  run("fullness", [&] { return verify_fullness(a); });
  run("block_reduction", [&] { return verify_block_reduction(a, tr); });
  run("dominance_criteria", [&] { return verify_dominance_criteria(a.alpha, a.lambda, a.datum); });
  run("top_degree_cocenter", [&] { return check_top_degree_cocenter(a, summary.top_degree_dim); });
  return summary.algebra_dims;
}

VerificationReport run_job(const JobConfig& cfg) {
  VerificationReport report;
  report.config_echo = cfg.to_json();
  if (cfg.suites.validate) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult v = validate_inputs(cfg);
    bool ok = v.passed();
    report.add("config", std::move(v), seconds_since(t0));
    if (!ok) return report;
  }
  if (cfg.suites.nilhecke) {
    for (const Field& f : cfg.fields) {
      auto t0 = std::chrono::steady_clock::now();
      auto results = nilhecke_suite(f, cfg.nilhecke_max_n, cfg.nilhecke_samples, cfg.seed + f.characteristic());
      double s = seconds_since(t0) / static_cast<double>(results.size());
      for (auto& r : results) report.add("nilhecke n<=" + std::to_string(cfg.nilhecke_max_n) + " field=" + f.name(), std::move(r), s);
    }
  }
  if (!(cfg.suites.build || cfg.suites.cocenter || cfg.suites.verify)) return report;
  Stage stage = cfg.suites.verify ? Stage::Verify : cfg.suites.cocenter ? Stage::Cocenter : Stage::Build;
  std::vector<std::pair<Field, GradedDims>> dims;
  for (const Field& f : cfg.fields) {
    auto d = run_instance(cfg, f, stage, report);
    if (d) dims.emplace_back(f, *d);
  }
  if (dims.size() > 1) {
    CheckResult r;
    r.id = "characteristic_comparison";
    bool all_equal = true;
    for (const auto& [f, d] : dims) {
      r.witness(f.name(), d.to_string());
      all_equal = all_equal && d == dims.front().second;
    }
    r.witness("all_equal", all_equal ? "yes" : "no");
    r.notes.push_back("informational: graded dimensions are recorded per field, not required to agree");
    report.add(config_label(cfg) + " all fields", std::move(r), 0);
  }
  return report;
}

}  // namespace klr
