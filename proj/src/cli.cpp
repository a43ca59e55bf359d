#include "gkz/cli.hpp"

#include "gkz/arrangement.hpp"
#include "gkz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace gkz::cli {

namespace {

std::string at(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string &path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

[[noreturn]] void fail(const std::string &path, const std::string &msg) { throw InputError(msg, path); }

long get_long(const json &j, const std::string &path) {
  if (j.is_number_integer())
    return j.get<long>();
  if (j.is_number_unsigned()) {
    auto u = j.get<unsigned long long>();
    if (u > static_cast<unsigned long long>(std::numeric_limits<long>::max()))
      fail(path, "integer out of range");
    return static_cast<long>(u);
  }
  fail(path, "expected an integer");
}

Integer get_integer(const json &j, const std::string &path) {
  if (j.is_string()) {
    Rational q;
    try {
      q = parse_rational(j.get<std::string>());
    } catch (const InputError &e) {
      fail(path, e.what());
    }
    if (q.get_den() != 1)
      fail(path, "expected an integer");
    return q.get_num();
  }
  return Integer(get_long(j, path));
}

template <std::size_t N> std::array<long, N> get_fixed(const json &j, const std::string &path) {
  if (!j.is_array() || j.size() != N)
    fail(path, "expected an array of " + std::to_string(N) + " integers");
  std::array<long, N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = get_long(j[i], at(path, i));
  return out;
}

std::vector<long> get_long_vector(const json &j, const std::string &path) {
  if (!j.is_array() || j.empty())
    fail(path, "expected a nonempty array of integers");
  std::vector<long> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_long(j[i], at(path, i)));
  return out;
}

std::vector<Integer> get_integer_vector(const json &j, const std::string &path) {
  if (!j.is_array() || j.empty())
    fail(path, "expected a nonempty array of integers");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_integer(j[i], at(path, i)));
  return out;
}

IntMatrix get_int_matrix(const json &j, const std::string &path) {
  if (!j.is_array() || j.empty())
    fail(path, "expected a nonempty array of rows");
  std::vector<std::vector<Integer>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    auto p = at(path, r);
    if (!j[r].is_array() || j[r].empty())
      fail(p, "expected a nonempty row");
    if (r > 0 && j[r].size() != j[0].size())
      fail(p, "row length differs from row 1");
    rows.push_back({});
    for (std::size_t c = 0; c < j[r].size(); ++c)
      rows.back().push_back(get_integer(j[r][c], at(p, c)));
  }
  return IntMatrix::from_rows(rows, j[0].size());
}

// Largest real root of an integer polynomial (constant first), by bracketing
// sign changes on a fine grid inside the Cauchy bound.
std::optional<double> largest_real_root(const std::vector<Integer> &p) {
  auto eval = [&](long double x) {
    long double y = 0;
    for (std::size_t i = p.size(); i-- > 0;)
      y = y * x + p[i].get_d();
    return y;
  };
  long double bound = 1;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    bound = std::max<long double>(bound, 1 + std::fabs(p[i].get_d()));
  const int steps = 200000;
  long double h = 2 * bound / steps;
  for (int k = steps; k > 0; --k) {
    long double lo = -bound + (k - 1) * h, hi = -bound + k * h;
    long double flo = eval(lo), fhi = eval(hi);
    if (fhi == 0)
      return static_cast<double>(hi);
    if ((flo < 0) != (fhi < 0)) {
      for (int it = 0; it < 200; ++it) {
        long double mid = (lo + hi) / 2;
        if ((eval(mid) < 0) == (flo < 0))
          lo = mid;
        else
          hi = mid;
      }
      return static_cast<double>((lo + hi) / 2);
    }
  }
  return std::nullopt;
}

struct FieldCache {
  std::map<std::vector<Integer>, FieldPtr> fields;

  FieldPtr get(const std::vector<Integer> &minpoly, std::optional<double> embedding, const std::string &path) {
    if (minpoly.size() < 2 || minpoly.back() != 1)
      fail(path, "minpoly must be monic of degree >= 1, constant term first");
    auto it = fields.find(minpoly);
    if (it != fields.end())
      return it->second;
    FieldPtr f;
    if (!embedding && minpoly == NumberField::heptagon()->minpoly())
      f = NumberField::heptagon();
    else {
      auto root = embedding ? embedding : largest_real_root(minpoly);
      if (!root)
        fail(path, "minpoly has no real root; pass \"embedding\"");
      f = NumberField::make(minpoly, *root);
    }
    fields.emplace(minpoly, f);
    return f;
  }
};

Scalar parse_scalar_with(const json &j, const std::string &path, FieldCache &cache) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Scalar(get_long(j, path));
  if (j.is_number_float())
    return Scalar::numeric(j.get<double>());
  if (j.is_string()) {
    try {
      return Scalar(parse_rational(j.get<std::string>()));
    } catch (const InputError &e) {
      fail(path, e.what());
    }
  }
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "coeffs" && it.key() != "minpoly" && it.key() != "embedding")
        fail(at(path, it.key()), "unknown field");
    if (!j.contains("coeffs"))
      fail(at(path, "coeffs"), "missing field");
    if (!j.contains("minpoly"))
      fail(at(path, "minpoly"), "missing field");
    auto minpoly = get_integer_vector(j["minpoly"], at(path, "minpoly"));
    std::optional<double> emb;
    if (j.contains("embedding")) {
      if (!j["embedding"].is_number())
        fail(at(path, "embedding"), "expected a number");
      emb = j["embedding"].get<double>();
    }
    auto field = cache.get(minpoly, emb, at(path, "minpoly"));
    const auto &cj = j["coeffs"];
    if (!cj.is_array() || cj.empty())
      fail(at(path, "coeffs"), "expected a nonempty array of rationals");
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < cj.size(); ++i) {
      auto s = parse_scalar_with(cj[i], at(at(path, "coeffs"), i), cache);
      if (!s.is_rational())
        fail(at(at(path, "coeffs"), i), "expected a rational");
      coeffs.push_back(s.as_rational());
    }
    return Scalar(NfElement::from_polynomial(field, coeffs));
  }
  fail(path, "expected a scalar: integer, \"p/q\", number or {coeffs, minpoly}");
}

PlanarConfig get_planar(const json &j, const std::string &path) {
  if (!j.is_array() || j.empty())
    fail(path, "expected a nonempty array of pairs");
  FieldCache cache;
  std::vector<Vec2> rows;
  bool numeric = false, exact_field = false;
  for (std::size_t r = 0; r < j.size(); ++r) {
    auto p = at(path, r);
    if (!j[r].is_array() || j[r].size() != 2)
      fail(p, "expected a pair");
    Vec2 v{parse_scalar_with(j[r][0], at(p, 0), cache), parse_scalar_with(j[r][1], at(p, 1), cache)};
    for (std::size_t k = 0; k < 2; ++k) {
      numeric = numeric || v[k].kind() == ScalarKind::Numeric;
      exact_field = exact_field || v[k].kind() == ScalarKind::NumberField;
    }
    rows.push_back(v);
  }
  if (numeric && exact_field)
    fail(path, "number-field entries cannot be mixed with floating-point entries");
  if (cache.fields.size() > 1)
    fail(path, "entries live in different number fields");
  if (numeric) {
    std::vector<std::array<double, 2>> d;
    for (const auto &v : rows)
      d.push_back({v[0].to_double(), v[1].to_double()});
    return PlanarConfig::numeric(d);
  }
  if (exact_field) {
    auto field = cache.fields.begin()->second;
    for (auto &v : rows)
      for (auto &s : v)
        if (s.is_rational())
          s = Scalar(NfElement(field, s.as_rational()));
  }
  try {
    return PlanarConfig(rows);
  } catch (const InputError &e) {
    fail(path, e.what());
  } catch (const ContextMismatch &e) {
    fail(path, e.what());
  }
}

const std::set<std::string> kParamKeys{"gamma", "alpha", "beta", "a",     "c",         "order",    "box",
                                       "bound", "v",     "degree", "fixture", "semantics", "function", "balanced7",
                                       "oracle_samples"};

Params get_params(const json &j, const std::string &path) {
  Params p;
  if (!j.is_object())
    fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kParamKeys.count(it.key()))
      fail(at(path, it.key()), "unknown parameter");
  auto has = [&](const char *k) { return j.contains(k) && !j[k].is_null(); };
  if (has("gamma"))
    p.gamma = get_fixed<2>(j["gamma"], at(path, "gamma"));
  if (has("alpha"))
    p.alpha = get_fixed<2>(j["alpha"], at(path, "alpha"));
  if (has("beta"))
    p.beta = get_fixed<2>(j["beta"], at(path, "beta"));
  if (has("a"))
    p.a = get_fixed<2>(j["a"], at(path, "a"));
  if (has("c")) {
    p.c = get_fixed<3>(j["c"], at(path, "c"));
    for (std::size_t i = 0; i < 3; ++i)
      if ((*p.c)[i] < 1)
        fail(at(at(path, "c"), i), "c must be positive");
  }
  auto nonneg = [&](const char *k, std::optional<long> &dst, long lo) {
    if (!has(k))
      return;
    dst = get_long(j[k], at(path, k));
    if (*dst < lo)
      fail(at(path, k), "must be at least " + std::to_string(lo));
  };
  nonneg("order", p.order, 0);
  nonneg("box", p.box, 1);
  nonneg("bound", p.bound, 0);
  nonneg("oracle_samples", p.oracle_samples, 0);
  if (p.bound && *p.bound > 12)
    fail(at(path, "bound"), "bound above 12 is not supported");
  if (p.order && *p.order > 200)
    fail(at(path, "order"), "order above 200 is not supported");
  if (p.box && *p.box > 4096)
    fail(at(path, "box"), "box above 4096 is not supported");
  if (p.oracle_samples && *p.oracle_samples > 100)
    fail(at(path, "oracle_samples"), "at most 100 samples");
  if (has("v"))
    p.v = get_long_vector(j["v"], at(path, "v"));
  if (has("degree"))
    p.degree = get_integer_vector(j["degree"], at(path, "degree"));
  if (has("fixture")) {
    if (!j["fixture"].is_string())
      fail(at(path, "fixture"), "expected a string");
    p.fixture = j["fixture"].get<std::string>();
    if (!f2_fixtures().count(*p.fixture))
      fail(at(path, "fixture"), "unknown fixture '" + *p.fixture + "'");
  }
  if (has("semantics")) {
    if (!j["semantics"].is_string() ||
        (j["semantics"].get<std::string>() != "chambers" && j["semantics"].get<std::string>() != "lattice"))
      fail(at(path, "semantics"), "expected \"chambers\" or \"lattice\"");
    p.semantics = j["semantics"].get<std::string>();
  }
  if (has("balanced7")) {
    if (!j["balanced7"].is_boolean())
      fail(at(path, "balanced7"), "expected a boolean");
    p.balanced7 = j["balanced7"].get<bool>();
  }
  if (has("function"))
    p.function = parse_function(j["function"], at(path, "function"));
  if (p.fixture && p.function)
    fail(at(path, "function"), "give either fixture or function, not both");
  return p;
}

// ---- serialization --------------------------------------------------------

json long_array(const auto &xs) {
  json out = json::array();
  for (auto x : xs)
    out.push_back(x);
  return out;
}

json integer_array(const std::vector<Integer> &xs) {
  json out = json::array();
  for (const auto &x : xs)
    out.push_back(x.fits_slong_p() ? json(x.get_si()) : json(to_string(x)));
  return out;
}

json int_matrix_json(const IntMatrix &M) {
  json out = json::array();
  for (std::size_t r = 0; r < M.rows(); ++r)
    out.push_back(integer_array(M.row(r)));
  return out;
}

json vec2_json(const Vec2 &v) { return json::array({to_json(v[0]), to_json(v[1])}); }

json planar_json(const PlanarConfig &B) {
  json out = json::array();
  for (const auto &v : B.vectors())
    out.push_back(vec2_json(v));
  return out;
}

json mat2_json(const Mat2 &g) { return json::array({vec2_json(g.row0), vec2_json(g.row1)}); }

json partition_json(const Partition &p) {
  json out = json::array();
  for (const auto &part : p)
    out.push_back(index_set_json(part));
  return out;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json rat_matrix_json(const RatMatrix &M) {
  json out = json::array();
  for (const auto &row : M) {
    json r = json::array();
    for (const auto &q : row)
      r.push_back(to_json(q));
    out.push_back(r);
  }
  return out;
}

json system_json(const CayleySystem &s) {
  return {{"gamma", {s.gamma1, s.gamma2}}, {"alpha", long_array(s.alpha)}, {"beta", long_array(s.beta)}};
}

// ---- command helpers ------------------------------------------------------

CayleySystem system_of(const Params &p) {
  CayleySystem s = CayleySystem::f2();
  if (p.gamma) {
    s.gamma1 = (*p.gamma)[0];
    s.gamma2 = (*p.gamma)[1];
  }
  if (p.alpha)
    s.alpha = *p.alpha;
  if (p.beta)
    s.beta = *p.beta;
  return s;
}

bool has_system_flags(const Params &p) { return p.gamma || p.alpha || p.beta; }

// matrix_A when given, otherwise the Cayley matrix of the system parameters.
IntMatrix matrix_of(const AnalysisRequest &req) {
  if (req.A)
    return *req.A;
  auto s = system_of(req.params);
  s.validate();
  return s.matrix();
}

PlanarConfig dual_of(const AnalysisRequest &req) {
  if (req.B)
    return *req.B;
  if (!req.A)
    throw InputError("this command needs gale_B or matrix_A", "gale_B");
  auto K = kernel_basis(*req.A);
  if (K.cols() != 2)
    throw PreconditionError("kernel of matrix_A has rank " + std::to_string(K.cols()) + ", not 2");
  return PlanarConfig::from_rows(K);
}

const std::map<std::string, std::vector<Integer>> &fixture_degrees() {
  static const std::map<std::string, std::vector<Integer>> d{
      {"R12", {-1, -1, -1, 0, 0}}, {"R1", {-1, -1, -1, 0, 0}},       {"R2", {-1, -1, -1, 0, 0}},
      {"R3", {-1, -1, -1, 0, 0}},  {"R_112_11", {-1, -1, -2, -1, -1}}};
  return d;
}

RationalFunction function_of(const Params &p, const char *cmd) {
  if (p.fixture)
    return f2_fixtures().at(*p.fixture);
  if (p.function)
    return *p.function;
  throw InputError(std::string(cmd) + " needs params.fixture or params.function", "params.function");
}

json cocircuit_json(const PlanarConfig &B, const Cocircuit &J) {
  auto st = cocircuit_status(B, J);
  return {{"indices", index_set_json(J.indices)},
          {"direction", vec2_json(J.direction)},
          {"balanced", st.balanced},
          {"splitting", st.splitting}};
}

json cmd_validate(const AnalysisRequest &req) {
  auto B = dual_of(req);
  auto rep = req.A ? validate(B, *req.A) : validate(B);
  json r{{"ok", rep.ok()},
         {"nonconfluent", rep.nonconfluent},
         {"pyramid_free", rep.pyramid_free},
         {"distinct_dual", rep.distinct_dual},
         {"zero_vectors", index_set_json(rep.zero_vectors)},
         {"crowded_line", index_set_json(rep.crowded_line)},
         {"vector_sum", vec2_json(rep.vector_sum)},
         {"failures", rep.failures()},
         {"n", B.size()}};
  if (rep.ones_in_row_span)
    r["ones_in_row_span"] = *rep.ones_in_row_span;
  if (rep.pyramid_free) {
    json cs = json::array();
    for (const auto &J : cocircuits(B))
      cs.push_back(cocircuit_json(B, J));
    r["cocircuits"] = cs;
    auto pr = profile(B);
    json decs = json::array();
    for (const auto &d : pr.decompositions)
      decs.push_back(partition_json(d));
    r["profile"] = {{"uniform", pr.uniform},
                    {"balanced", pr.balanced},
                    {"nonconfluent", pr.nonconfluent},
                    {"irreducible", pr.irreducible},
                    {"decompositions", decs}};
  }
  return r;
}

json cmd_gale(const AnalysisRequest &req) {
  json r;
  if (req.A) {
    auto K = kernel_basis(*req.A);
    r["matrix_A"] = int_matrix_json(*req.A);
    r["rank_A"] = rank(*req.A);
    r["kernel_basis"] = int_matrix_json(K);
    r["column_hnf"] = int_matrix_json(column_lattice_hnf(K));
    r["saturation_index"] = to_string(saturation_index(K));
    if (req.B) {
      auto Bi = req.B->integer_rows();
      r["gale_B"] = planar_json(*req.B);
      r["same_lattice"] = Bi ? json(column_lattice_hnf(*Bi) == column_lattice_hnf(K)) : json(nullptr);
    }
    return r;
  }
  auto Bi = req.B->integer_rows();
  if (!Bi)
    throw PreconditionError("gale needs an integral gale_B when matrix_A is absent");
  auto A = kernel_basis(Bi->transpose()).transpose();
  r["gale_B"] = int_matrix_json(*Bi);
  r["column_hnf"] = int_matrix_json(column_lattice_hnf(*Bi));
  r["saturation_index"] = to_string(saturation_index(*Bi));
  r["matrix_A"] = int_matrix_json(A);
  r["rank_A"] = rank(A);
  return r;
}

json classification_json(const PlanarConfig &B, const ClassificationResult &c) {
  json r{{"label", c.label}, {"fired", c.fired}, {"witness_holds", witness_holds(B, c)}};
  if (!c.parts.empty())
    r["parts"] = partition_json(c.parts);
  if (c.cocircuit)
    r["cocircuit"] = cocircuit_json(B, *c.cocircuit);
  if (c.map)
    r["map"] = mat2_json(*c.map);
  if (!c.params.empty()) {
    json ps = json::array();
    for (const auto &s : c.params)
      ps.push_back(to_json(s));
    r["params"] = ps;
  }
  if (c.pair_line_has_vertex)
    r["pair_line_has_vertex"] = *c.pair_line_has_vertex;
  if (c.canonical)
    r["canonical"] = planar_json(*c.canonical);
  return r;
}

json cmd_classify(const AnalysisRequest &req) {
  auto B = dual_of(req);
  auto c = req.params.balanced7.value_or(false) ? classify_balanced7(B) : classify(B);
  auto r = classification_json(B, c);
  r["n"] = B.size();
  return r;
}

json cmd_cayley(const AnalysisRequest &req) {
  auto det = essential_cayley(Configuration(*req.A));
  json r{{"essential", det.structure.has_value()}, {"diagnostic", det.diagnostic}};
  if (!det.structure)
    return r;
  const auto &s = *det.structure;
  json groups = json::array(), sets = json::array();
  for (const auto &g : s.groups)
    groups.push_back(index_set_json(g));
  for (const auto &ps : s.point_sets) {
    json pts = json::array();
    for (const auto &p : ps)
      pts.push_back(long_array(p));
    sets.push_back(pts);
  }
  IndexSet cols(s.variable_columns.begin(), s.variable_columns.end());
  json varcols = json::array();
  for (auto c : s.variable_columns)
    varcols.push_back(c + 1);
  r["r"] = s.r;
  r["groups"] = groups;
  r["point_sets"] = sets;
  r["system"] = {{"gamma", {s.gamma1, s.gamma2}}, {"alpha", long_array(s.alpha)}, {"beta", long_array(s.beta)}};
  r["variables"] = CayleySystem::labels();
  r["variable_columns"] = varcols;
  r["cayley_matrix"] = int_matrix_json(s.cayley_matrix);
  r["transform"] = rat_matrix_json(s.transform);
  return r;
}

json cmd_residue(const AnalysisRequest &req) {
  const auto &p = req.params;
  auto sys = system_of(p);
  std::array<long, 3> c = p.c.value_or(std::array<long, 3>{1, 1, 1});
  std::array<long, 2> a = p.a.value_or(std::array<long, 2>{0, 0});
  long order = p.order.value_or(6);
  auto res = residue_series(sys, a, order);
  const CayleyVar xs[3] = {X1, X2, X3};
  for (std::size_t i = 0; i < 3; ++i)
    for (long k = 1; k < c[i]; ++k)
      res = shift_c(res, xs[i]);
  json shifts = json::array();
  for (auto v : res.shifts)
    shifts.push_back(CayleySystem::labels()[v]);
  json pairs = json::array();
  for (const auto &sp : res.pairs)
    pairs.push_back({{"m", long_array(sp.m)}, {"nu", long_array(sp.nu)}});
  json r{{"system", system_json(sys)},
         {"c", long_array(res.c)},
         {"a", long_array(res.a)},
         {"degree", integer_array(res.degree())},
         {"euler_jacobi", euler_jacobi_test(sys, res.c, res.a)},
         {"variables", CayleySystem::labels()},
         {"shifts", shifts},
         {"pairs", pairs},
         {"series", to_json(res.series)}};
  long samples = p.oracle_samples.value_or(0);
  if (samples > 0) {
    if (c != std::array<long, 3>{1, 1, 1})
      throw PreconditionError("oracle comparison is available for c = (1,1,1) only");
    std::mt19937_64 rng(req.seed);
    std::uniform_real_distribution<double> mod(0.6, 1.6), ang(0, 2 * M_PI);
    json checks = json::array();
    for (long k = 0; k < samples; ++k) {
      std::vector<std::complex<double>> x;
      for (int i = 0; i < 7; ++i)
        x.push_back(std::polar(mod(rng), ang(rng)));
      x[X3] *= 40.0; // deep inside the convergence region of the y3, z3 expansion
      auto o = numeric_residue_oracle(sys, a, ResiduePair::P12, x).value;
      auto s = res.series.evaluate(x);
      json pt = json::array();
      for (const auto &z : x)
        pt.push_back(complex_json(z));
      checks.push_back({{"point", pt},
                        {"series", complex_json(s)},
                        {"oracle", complex_json(o)},
                        {"abs_error", std::abs(s - o)}});
    }
    r["oracle"] = checks;
  }
  return r;
}

json cmd_annihilate(const AnalysisRequest &req) {
  const auto &p = req.params;
  auto f = function_of(p, "annihilate");
  auto A = matrix_of(req);
  if (f.nvars() != A.cols())
    throw InputError("function has " + std::to_string(f.nvars()) + " variables but A has " +
                         std::to_string(A.cols()) + " columns",
                     "params.function");
  std::vector<Integer> degree;
  if (p.degree)
    degree = *p.degree;
  else if (p.fixture)
    degree = fixture_degrees().at(*p.fixture);
  else
    throw InputError("annihilate needs params.degree", "params.degree");
  if (degree.size() != A.rows())
    throw InputError("degree has length " + std::to_string(degree.size()) + ", expected " +
                         std::to_string(A.rows()),
                     "params.degree");
  unsigned bound = static_cast<unsigned>(p.bound.value_or(3));
  auto rep = annihilation_check(Configuration(A), degree, f, bound);
  return {{"passed", rep.passed},
          {"checked", rep.checked},
          {"failures", rep.failures},
          {"bound", bound},
          {"degree", integer_array(degree)}};
}

json cmd_stability(const AnalysisRequest &req) {
  auto f = function_of(req.params, "stability");
  unsigned bound = static_cast<unsigned>(req.params.bound.value_or(6));
  auto rep = stability_check(f, bound);
  return {{"stable_up_to_bound", rep.stable_up_to_bound},
          {"bound", rep.bound},
          {"killing_derivative", rep.killing_derivative ? long_array(*rep.killing_derivative) : json(nullptr)}};
}

json cell_json(const Cell &c) {
  return {{"support", index_set_json(c.support)}, {"sample", long_array(c.sample)}, {"bounded", c.bounded}};
}

json cmd_arrangement(const AnalysisRequest &req) {
  const auto &p = req.params;
  auto A = matrix_of(req);
  IntMatrix B;
  if (req.B) {
    auto Bi = req.B->integer_rows();
    if (!Bi)
      throw InputError("arrangement needs an integral gale_B", "gale_B");
    B = *Bi;
  } else {
    B = kernel_basis(A);
  }
  if (p.v && p.degree)
    throw InputError("give either v or degree, not both", "params.degree");
  if (p.v && p.v->size() != B.rows())
    throw InputError("v has length " + std::to_string(p.v->size()) + ", expected " + std::to_string(B.rows()),
                     "params.v");
  if (p.degree && p.degree->size() != A.rows())
    throw InputError("degree has length " + std::to_string(p.degree->size()) + ", expected " +
                         std::to_string(A.rows()),
                     "params.degree");
  if (!p.v && !p.degree)
    throw InputError("arrangement needs params.v or params.degree", "params.v");
  auto arr = p.v ? Arrangement(A, B, *p.v) : Arrangement::from_degree(A, B, *p.degree);
  auto sem = p.semantics.value_or("chambers") == "lattice" ? CellSemantics::LatticePoints : CellSemantics::Chambers;
  auto m = minimal_cells(arr, p.box.value_or(12), sem);
  json cells = json::array();
  bool all_unbounded = true;
  for (const auto &c : m.cells) {
    cells.push_back(cell_json(c));
    all_unbounded = all_unbounded && !c.bounded;
  }
  json r{{"gale_B", int_matrix_json(B)},
         {"v", long_array(arr.v)},
         {"degree", integer_array(arr.degree())},
         {"box", m.box},
         {"semantics", sem == CellSemantics::Chambers ? "chambers" : "lattice"},
         {"cells", cells},
         {"all_unbounded", all_unbounded}};
  if (auto w = isolating_direction(arr, m.cells))
    r["isolating_direction"] = {{"w", long_array(w->w)}, {"cell", w->cell + 1}, {"rho", w->rho}};
  else
    r["isolating_direction"] = nullptr;
  return r;
}

json cmd_ej_test(const AnalysisRequest &req) {
  const auto &p = req.params;
  if (!p.a)
    throw InputError("ej-test needs params.a", "params.a");
  auto sys = system_of(p);
  sys.validate();
  auto c = p.c.value_or(std::array<long, 3>{1, 1, 1});
  json poly = json::array();
  for (const auto &pt : minkowski_polygon(sys, c))
    poly.push_back(long_array(pt));
  return {{"in_cone", euler_jacobi_test(sys, c, *p.a)},
          {"system", system_json(sys)},
          {"c", long_array(c)},
          {"a", long_array(*p.a)},
          {"polygon", poly}};
}

json cmd_fixtures(const AnalysisRequest &) {
  json out = json::array();
  const auto &names = CayleySystem::labels();
  for (const auto &[name, f] : f2_fixtures())
    out.push_back(
        {{"name", name}, {"degree", integer_array(fixture_degrees().at(name))}, {"function", to_json(f, names)}});
  return {{"variables", names}, {"fixtures", out}};
}

json dispatch(const AnalysisRequest &req) {
  const auto &c = req.command;
  if (c == "validate")
    return cmd_validate(req);
  if (c == "gale")
    return cmd_gale(req);
  if (c == "classify")
    return cmd_classify(req);
  if (c == "cayley")
    return cmd_cayley(req);
  if (c == "residue")
    return cmd_residue(req);
  if (c == "annihilate")
    return cmd_annihilate(req);
  if (c == "stability")
    return cmd_stability(req);
  if (c == "arrangement")
    return cmd_arrangement(req);
  if (c == "ej-test")
    return cmd_ej_test(req);
  return cmd_fixtures(req);
}

json diagnostic(const std::string &kind, const std::string &msg, const std::string &path = {}) {
  json d{{"kind", kind}, {"message", msg}};
  if (!path.empty())
    d["path"] = path;
  return d;
}

} // namespace

const std::vector<std::string> &commands() {
  static const std::vector<std::string> c{"validate", "gale",        "classify", "cayley",  "residue",
                                          "annihilate", "stability", "arrangement", "ej-test", "fixtures"};
  return c;
}

std::string AnalysisReport::status() const {
  switch (exit_code) {
  case 0:
    return "ok";
  case 1:
    return "precondition_failed";
  default:
    return "input_error";
  }
}

json AnalysisReport::to_json() const {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"seed", seed},
          {"status", status()},
          {"exit_code", exit_code},
          {"result", result},
          {"diagnostics", diagnostics}};
}

json to_json(const Rational &q) { return gkz::to_string(q); }

json to_json(const Scalar &s) {
  switch (s.kind()) {
  case ScalarKind::Rational:
    return to_json(s.as_rational());
  case ScalarKind::Numeric:
    return s.as_double();
  case ScalarKind::NumberField: {
    json coeffs = json::array();
    for (const auto &q : s.as_nf().coeffs())
      coeffs.push_back(to_json(q));
    return {{"coeffs", coeffs}, {"minpoly", integer_array(s.as_nf().field()->minpoly())}};
  }
  }
  return nullptr;
}

namespace {
json terms_json(const std::map<Exponent, Rational> &terms) {
  json ts = json::array();
  for (const auto &[e, c] : terms)
    ts.push_back({{"exp", e}, {"coeff", to_json(c)}});
  return ts;
}
} // namespace

json to_json(const LaurentPolynomial &p) { return {{"terms", terms_json(p.terms())}}; }

json to_json(const TruncatedSeries &s) {
  return {{"terms", terms_json(s.terms)},
          {"weight", s.weight},
          {"order", s.order},
          {"offset", s.offset},
          {"perturbed", s.perturbed}};
}

json to_json(const RationalFunction &f, const std::vector<std::string> &names) {
  json fs = json::array();
  for (const auto &fac : f.factors())
    fs.push_back({{"base", to_json(fac.base)}, {"exp", fac.exp}});
  return {{"nvars", f.nvars()}, {"numerator", to_json(f.numerator())}, {"factors", fs}, {"text", f.to_string(names)}};
}

json index_set_json(const IndexSet &s) {
  json out = json::array();
  for (auto i : s)
    out.push_back(i + 1);
  return out;
}

Scalar parse_scalar(const json &j, const std::string &path) {
  FieldCache cache;
  return parse_scalar_with(j, path, cache);
}

LaurentPolynomial parse_polynomial(const json &j, const std::string &path, std::size_t nvars) {
  if (!j.is_object())
    fail(path, "expected {\"terms\": [...]}");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "terms")
      fail(at(path, it.key()), "unknown field");
  if (!j.contains("terms") || !j["terms"].is_array())
    fail(at(path, "terms"), "expected an array of terms");
  LaurentPolynomial p(nvars);
  const auto &ts = j["terms"];
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto tp = at(at(path, "terms"), i);
    if (!ts[i].is_object() || !ts[i].contains("exp") || !ts[i].contains("coeff"))
      fail(tp, "expected {\"exp\": [...], \"coeff\": \"p/q\"}");
    for (auto it = ts[i].begin(); it != ts[i].end(); ++it)
      if (it.key() != "exp" && it.key() != "coeff")
        fail(at(tp, it.key()), "unknown field");
    auto e = get_long_vector(ts[i]["exp"], at(tp, "exp"));
    if (e.size() != nvars)
      fail(at(tp, "exp"), "exponent has length " + std::to_string(e.size()) + ", expected " + std::to_string(nvars));
    Exponent ex;
    for (auto x : e) {
      if (std::abs(x) > 1000)
        fail(at(tp, "exp"), "exponent out of range");
      ex.push_back(static_cast<int>(x));
    }
    auto c = parse_scalar(ts[i]["coeff"], at(tp, "coeff"));
    if (!c.is_rational())
      fail(at(tp, "coeff"), "expected a rational coefficient");
    p.add_term(ex, c.as_rational());
  }
  return p;
}

RationalFunction parse_function(const json &j, const std::string &path) {
  if (!j.is_object())
    fail(path, "expected {\"nvars\", \"numerator\", \"factors\"}");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "nvars" && it.key() != "numerator" && it.key() != "factors" && it.key() != "text")
      fail(at(path, it.key()), "unknown field");
  if (!j.contains("nvars"))
    fail(at(path, "nvars"), "missing field");
  long n = get_long(j["nvars"], at(path, "nvars"));
  if (n < 1 || n > 64)
    fail(at(path, "nvars"), "nvars must lie in [1, 64]");
  if (!j.contains("numerator"))
    fail(at(path, "numerator"), "missing field");
  RationalFunction f(parse_polynomial(j["numerator"], at(path, "numerator"), static_cast<std::size_t>(n)));
  if (j.contains("factors")) {
    const auto &fs = j["factors"];
    if (!fs.is_array())
      fail(at(path, "factors"), "expected an array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      auto fp = at(at(path, "factors"), i);
      if (!fs[i].is_object() || !fs[i].contains("base"))
        fail(fp, "expected {\"base\": {...}, \"exp\": k}");
      for (auto it = fs[i].begin(); it != fs[i].end(); ++it)
        if (it.key() != "base" && it.key() != "exp")
          fail(at(fp, it.key()), "unknown field");
      long k = fs[i].contains("exp") ? get_long(fs[i]["exp"], at(fp, "exp")) : 1;
      if (k < 1 || k > 64)
        fail(at(fp, "exp"), "exponent must lie in [1, 64]");
      auto base = parse_polynomial(fs[i]["base"], at(fp, "base"), static_cast<std::size_t>(n));
      if (base.is_zero())
        fail(at(fp, "base"), "zero denominator");
      f.divide_by(base, static_cast<unsigned>(k));
    }
  }
  return f;
}

AnalysisRequest parse_request(const json &doc) {
  if (!doc.is_object())
    fail("", "request must be a JSON object");
  static const std::set<std::string> top{"schema_version", "command", "matrix_A", "gale_B", "params", "seed"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!top.count(it.key()))
      fail(it.key(), "unknown field");
  if (doc.contains("schema_version") && doc["schema_version"] != kSchemaVersion)
    fail("schema_version", std::string("unsupported schema_version; expected \"") + kSchemaVersion + "\"");
  AnalysisRequest req;
  if (!doc.contains("command"))
    fail("command", "missing field");
  if (!doc["command"].is_string())
    fail("command", "expected a string");
  req.command = doc["command"].get<std::string>();
  const auto &cs = commands();
  if (std::find(cs.begin(), cs.end(), req.command) == cs.end())
    fail("command", "unknown command '" + req.command + "'");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long>() >= 0))
      fail("seed", "expected a nonnegative integer");
    req.seed = doc["seed"].get<unsigned long>();
  }
  if (doc.contains("matrix_A"))
    req.A = get_int_matrix(doc["matrix_A"], "matrix_A");
  if (doc.contains("gale_B"))
    req.B = get_planar(doc["gale_B"], "gale_B");
  if (req.A && req.B) {
    if (req.A->cols() != req.B->size())
      fail("gale_B", "gale_B has " + std::to_string(req.B->size()) + " rows but matrix_A has " +
                         std::to_string(req.A->cols()) + " columns");
    for (std::size_t r = 0; r < req.A->rows(); ++r)
      for (std::size_t k = 0; k < 2; ++k) {
        Scalar s;
        for (std::size_t j = 0; j < req.A->cols(); ++j)
          s += Scalar((*req.A)(r, j)) * (*req.B)[j][k];
        if (!s.is_zero())
          fail("gale_B", "matrix_A * gale_B is not zero");
      }
  }
  if (doc.contains("params"))
    req.params = get_params(doc["params"], "params");

  // payload requirements per command
  const auto &c = req.command;
  if ((c == "validate" || c == "gale" || c == "classify") && !req.A && !req.B)
    fail("gale_B", c + " needs gale_B or matrix_A");
  if (c == "cayley" && !req.A)
    fail("matrix_A", "cayley needs matrix_A");
  if ((c == "annihilate" || c == "stability") && !req.params.fixture && !req.params.function)
    fail("params.fixture", c + " needs params.fixture or params.function");
  if (c == "ej-test" && !req.params.a)
    fail("params.a", "ej-test needs params.a");
  if (c == "arrangement" && !req.params.v && !req.params.degree)
    fail("params.v", "arrangement needs params.v or params.degree");
  if (req.A && has_system_flags(req.params) && (c == "annihilate" || c == "arrangement"))
    fail("params.gamma", "system parameters conflict with matrix_A");
  return req;
}

AnalysisRequest parse_request(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string("malformed JSON at byte ") + std::to_string(e.byte), "");
  }
  return parse_request(doc);
}

AnalysisReport run(const AnalysisRequest &req) {
  AnalysisReport rep;
  rep.command = req.command;
  try {
    rep.result = dispatch(req);
    rep.exit_code = 0;
  } catch (const PreconditionError &e) {
    rep.exit_code = 1;
    rep.diagnostics.push_back(diagnostic("precondition", e.what()));
  } catch (const InputError &e) {
    rep.exit_code = 2;
    rep.diagnostics.push_back(diagnostic("input", e.what(), e.path()));
  } catch (const DivisionByZero &e) {
    rep.exit_code = 1;
    rep.diagnostics.push_back(diagnostic("precondition", e.what()));
  } catch (const ContextMismatch &e) {
    rep.exit_code = 2;
    rep.diagnostics.push_back(diagnostic("input", e.what()));
  } catch (const std::exception &e) {
    rep.exit_code = 1;
    rep.diagnostics.push_back(diagnostic("internal", e.what()));
  }
  if (rep.exit_code != 0)
    rep.result = nullptr;
  return rep;
}

AnalysisReport run_document(json doc, unsigned long seed, const std::string &command) {
  AnalysisReport rep;
  rep.command = command;
  rep.seed = seed;
  if (doc.is_object() && !command.empty() && !doc.contains("command"))
    doc["command"] = command;
  try {
    auto req = parse_request(doc);
    if (!command.empty() && req.command != command)
      throw InputError("request command '" + req.command + "' differs from '" + command + "'", "command");
    if (!doc.contains("seed"))
      req.seed = seed;
    auto out = run(req);
    out.seed = req.seed;
    return out;
  } catch (const InputError &e) {
    if (doc.is_object() && doc.contains("command") && doc["command"].is_string()) {
      auto c = doc["command"].get<std::string>();
      if (std::find(commands().begin(), commands().end(), c) != commands().end())
        rep.command = c;
    }
    rep.exit_code = 2;
    rep.diagnostics.push_back(diagnostic("input", e.what(), e.path()));
    return rep;
  }
}

AnalysisReport run_text(const std::string &text, unsigned long seed, const std::string &command) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    AnalysisReport rep;
    rep.command = command;
    rep.seed = seed;
    rep.exit_code = 2;
    rep.diagnostics.push_back(diagnostic("input", "malformed JSON at byte " + std::to_string(e.byte)));
    return rep;
  }
  return run_document(std::move(doc), seed, command);
}

} // namespace gkz::cli
