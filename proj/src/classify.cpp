#include "gkz/classify.hpp"

#include "gkz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gkz {

namespace {

Scalar nf(const FieldPtr &F, std::vector<long> c) {
  return Scalar(NfElement::from_polynomial(F, std::vector<Rational>(c.begin(), c.end())));
}

// Heptagon rows as polynomials in x (constant first).
const std::vector<std::array<std::vector<long>, 2>> &heptagon_rows() {
  static const std::vector<std::array<std::vector<long>, 2>> rows = {
      {{{1}, {0}}},          {{{0}, {1}}},         {{{-1}, {0, 1}}},     {{{0, -1}, {-1, 0, 1}}},
      {{{1, 0, -1}, {1, 0, -1}}}, {{{-1, 0, 1}, {0, -1}}}, {{{0, 1}, {-1}}}};
  return rows;
}

std::string join(const std::vector<std::string> &v, const char *sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + v[i];
  return s;
}

bool contains(const IndexSet &s, std::size_t i) { return std::binary_search(s.begin(), s.end(), i); }

Vec2 perp(const Vec2 &u) { return {-u[1], u[0]}; }

// Coordinate of b along a nonzero u (b assumed parallel to u).
Scalar ratio(const Vec2 &b, const Vec2 &u) {
  return u[0].is_zero() ? b[1] / u[1] : b[0] / u[0];
}

bool same_scalars(std::vector<Scalar> a, std::vector<Scalar> b) {
  if (a.size() != b.size())
    return false;
  std::vector<bool> used(b.size(), false);
  for (const auto &x : a) {
    bool hit = false;
    for (std::size_t k = 0; k < b.size() && !hit; ++k)
      if (!used[k] && b[k] == x)
        used[k] = hit = true;
    if (!hit)
      return false;
  }
  return true;
}

std::optional<Cocircuit> unbalanced_nonsplitting(const PlanarConfig &B, const std::vector<Cocircuit> &cs) {
  for (const auto &J : cs) {
    auto st = cocircuit_status(B, J);
    if (!st.splitting && !st.balanced)
      return J;
  }
  return std::nullopt;
}

bool all_splitting(const PlanarConfig &B, const std::vector<Cocircuit> &cs) {
  for (const auto &J : cs)
    if (!cocircuit_status(B, J).splitting)
      return false;
  return cs.size() >= 2;
}

Partition cocircuit_parts(const std::vector<Cocircuit> &cs) {
  Partition p;
  for (const auto &J : cs)
    p.push_back(J.indices);
  return p;
}

bool spanning_triple(const PlanarConfig &B, const IndexSet &t) {
  return t.size() == 3 && (!parallel(B[t[0]], B[t[1]]) || !parallel(B[t[0]], B[t[2]]));
}

bool is_type_d(const PlanarConfig &B, const Partition &p) {
  if (p.size() != 3)
    return false;
  int triples = 0, pairs = 0;
  for (const auto &part : p) {
    if (part.size() == 2)
      ++pairs;
    else if (spanning_triple(B, part))
      ++triples;
  }
  return triples == 1 && pairs == 2;
}

// Pair part index and five part index of a type-e partition, if it is one.
std::optional<std::pair<std::size_t, std::size_t>> type_e_split(const PlanarConfig &B, const Partition &p) {
  if (p.size() != 2)
    return std::nullopt;
  for (std::size_t k = 0; k < 2; ++k) {
    if (p[k].size() != 2 || p[1 - k].size() != 5)
      continue;
    auto B2 = B.subconfig(p[1 - k]);
    if (is_irreducible(B2) && is_balanced(B2))
      return std::make_pair(k, 1 - k);
  }
  return std::nullopt;
}

bool pair_line_hits(const PlanarConfig &B, const IndexSet &pair, const IndexSet &rest) {
  for (auto k : rest)
    if (parallel(B[pair[0]], B[k]))
      return true;
  return false;
}

std::optional<Mat2> heptagon_certificate(const PlanarConfig &B) {
  try {
    if (B.kind() == ScalarKind::Numeric) {
      for (const auto &T : heptagon_templates_numeric())
        if (auto g = gl2_equivalence(B, T))
          return g;
      return std::nullopt;
    }
    return gl2_equivalence(B, B.kind() == ScalarKind::NumberField ? heptagon_template(B.field())
                                                                  : heptagon_template());
  } catch (const ContextMismatch &) {
    return std::nullopt;
  }
}

ClassificationResult classify7(const PlanarConfig &B) {
  ClassificationResult r;
  auto cs = cocircuits(B);
  auto parts = zero_sum_partitions(B, 2);

  auto a = unbalanced_nonsplitting(B, cs);
  if (a)
    r.fired.push_back("a");
  bool c = all_splitting(B, cs);
  if (c)
    r.fired.push_back("c");
  const Partition *d = nullptr;
  for (const auto &p : parts)
    if (is_type_d(B, p)) {
      d = &p;
      break;
    }
  if (d)
    r.fired.push_back("d");
  const Partition *e = nullptr;
  std::pair<std::size_t, std::size_t> e_split;
  for (const auto &p : parts)
    if (auto s = type_e_split(B, p)) {
      e = &p;
      e_split = *s;
      break;
    }
  if (e)
    r.fired.push_back("e");
  bool irreducible_balanced = parts.empty() && is_balanced(B);
  std::optional<Mat2> hept;
  if (irreducible_balanced) {
    hept = heptagon_certificate(B);
    if (hept)
      r.fired.push_back("b");
  }

  if (r.fired.empty()) {
    if (irreducible_balanced)
      throw PreconditionError("unclassified: irreducible balanced configuration is not "
                              "GL(2)-equivalent to the heptagon template");
    throw PreconditionError("unclassified configuration");
  }
  r.label = r.fired.front();
  if (r.label == "a") {
    r.cocircuit = a;
  } else if (r.label == "c") {
    r.parts = cocircuit_parts(cs);
  } else if (r.label == "d") {
    r.parts = *d;
  } else if (r.label == "e") {
    r.parts = *e;
    r.pair_line_has_vertex = pair_line_hits(B, (*e)[e_split.first], (*e)[e_split.second]);
  } else {
    r.map = hept;
  }
  return r;
}

std::optional<std::pair<Partition, Scalar>> scaled_triples(const PlanarConfig &B) {
  for (const auto &p : zero_sum_partitions(B, 2)) {
    if (p.size() != 2 || p[0].size() != 3 || p[1].size() != 3)
      continue;
    const Vec2 &u = B[p[0][0]];
    for (auto k : p[1]) {
      if (!parallel(u, B[k]))
        continue;
      Scalar s = ratio(B[k], u);
      std::vector<Vec2> scaled, other;
      for (auto i : p[0])
        scaled.push_back(s * B[i]);
      for (auto i : p[1])
        other.push_back(B[i]);
      if (same_multiset(scaled, other) && !(s == Scalar(-1)))
        return std::make_pair(p, s);
    }
  }
  return std::nullopt;
}

} // namespace

PlanarConfig heptagon_template(const FieldPtr &F) {
  std::vector<Vec2> v;
  for (const auto &row : heptagon_rows())
    v.push_back({nf(F, row[0]), nf(F, row[1])});
  return PlanarConfig(std::move(v));
}

PlanarConfig heptagon_template() { return heptagon_template(NumberField::heptagon()); }

std::vector<PlanarConfig> heptagon_templates_numeric() {
  std::vector<PlanarConfig> out;
  const double pi = std::acos(-1.0);
  for (int k = 1; k <= 3; ++k) {
    double x = 2 * std::cos(2 * k * pi / 7);
    auto ev = [&](const std::vector<long> &c) {
      double acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + static_cast<double>(*it);
      return acc;
    };
    std::vector<std::array<double, 2>> rows;
    for (const auto &row : heptagon_rows())
      rows.push_back({ev(row[0]), ev(row[1])});
    out.push_back(PlanarConfig::numeric(rows));
  }
  return out;
}

ClassificationResult classify(const PlanarConfig &B) { return classify(B, B.size()); }

ClassificationResult classify(const PlanarConfig &B, std::size_t n) {
  if (n < 4 || n > 7)
    throw InputError("classification is defined for 4 to 7 vectors");
  if (B.size() != n)
    throw InputError("configuration has " + std::to_string(B.size()) + " vectors, expected " +
                     std::to_string(n));
  auto rep = validate(B);
  if (!rep.ok())
    throw PreconditionError(join(rep.failures(), "; "));
  if (n == 7)
    return classify7(B);

  ClassificationResult r;
  auto cs = cocircuits(B);
  if (n == 4) {
    r.label = "a";
    r.cocircuit = unbalanced_nonsplitting(B, cs);
    if (!r.cocircuit)
      throw PreconditionError("four-vector configuration without a non-splitting unbalanced cocircuit");
    return r;
  }
  if (n == 5) {
    auto parts = zero_sum_partitions(B, 2);
    if (!parts.empty()) {
      r.label = "c";
      r.parts = parts.front();
    } else if (auto a = unbalanced_nonsplitting(B, cs)) {
      r.label = "a";
      r.cocircuit = a;
    } else if (is_balanced(B)) {
      r.label = "b";
    } else {
      throw PreconditionError("unclassified five-vector configuration");
    }
    return r;
  }
  // n == 6
  if (auto a = unbalanced_nonsplitting(B, cs)) {
    r.label = "a";
    r.cocircuit = a;
  } else if (all_splitting(B, cs)) {
    r.label = "c";
    r.parts = cocircuit_parts(cs);
  } else if (auto t = scaled_triples(B)) {
    r.label = "b";
    r.parts = t->first;
    r.params = {t->second};
  } else {
    throw PreconditionError("unclassified six-vector configuration");
  }
  return r;
}

ClassificationResult classify_balanced7(const PlanarConfig &B) {
  if (B.size() != 7)
    throw PreconditionError("classify_balanced7 needs seven vectors");
  for (std::size_t i = 0; i < 7; ++i)
    if (is_zero(B[i]))
      throw PreconditionError("vector b" + std::to_string(i + 1) + " is zero");
  if (!is_balanced(B))
    throw PreconditionError("configuration is not balanced");

  ClassificationResult r;
  auto cs = cocircuits(B);
  Scalar one = promote_to(Scalar(1), B[0][0]), zero = promote_to(Scalar(0), B[0][0]);
  Vec2 e1{one, zero}, e2{zero, one};

  if (cs.size() == 1) {
    r.label = "v";
    Vec2 u = cs[0].direction;
    Mat2 g = Mat2::from_columns(u, perp(u)).inverse();
    r.map = g;
    r.canonical = B.transformed(g);
    return r;
  }

  for (const auto &L : cs) {
    if (L.indices.size() != 5)
      continue;
    r.label = "iv";
    IndexSet off;
    for (std::size_t i = 0; i < 7; ++i)
      if (!contains(L.indices, i))
        off.push_back(i);
    Vec2 w = -(B[off[0]] + B[off[1]]);
    auto wi = std::find_if(L.indices.begin(), L.indices.end(), [&](std::size_t i) { return B[i] == w; });
    if (wi == L.indices.end())
      throw PreconditionError("five-vector line lacks the vector -(u+v)");
    Mat2 g = Mat2::from_columns(w, B[off[0]]).inverse();
    IndexSet rest;
    for (auto i : L.indices)
      if (i != *wi)
        rest.push_back(i);
    std::vector<bool> used(rest.size(), false);
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (used[k])
        continue;
      used[k] = true;
      bool paired = false;
      for (std::size_t l = k + 1; l < rest.size() && !paired; ++l)
        if (!used[l] && B[rest[l]] == -B[rest[k]])
          used[l] = paired = true;
      if (!paired)
        throw PreconditionError("five-vector line does not split into opposite pairs");
      r.params.push_back(g.apply(B[rest[k]])[0].abs());
    }
    r.map = g;
    const Scalar &lam = r.params[0], &mu = r.params[1];
    r.canonical = PlanarConfig({e1, e2, -(e1 + e2), lam * e1, -(lam * e1), mu * e1, -(mu * e1)});
    return r;
  }

  auto t = classify(B, 7);
  if (t.label == "b") {
    r.label = "i";
    r.map = t.map;
    r.canonical = B.kind() == ScalarKind::NumberField ? heptagon_template(B.field()) : heptagon_template();
    if (B.kind() == ScalarKind::Numeric)
      for (const auto &T : heptagon_templates_numeric())
        if (same_multiset(B.transformed(*t.map).vectors(), T.vectors()))
          r.canonical = T;
    return r;
  }
  if (t.label == "e") {
    r.label = "ii";
    r.parts = t.parts;
    std::size_t pk = t.parts[0].size() == 2 ? 0 : 1;
    const IndexSet &pair = t.parts[pk], &five = t.parts[1 - pk];
    r.pair_line_has_vertex = t.pair_line_has_vertex;
    for (auto k : five) {
      if (!parallel(B[pair[0]], B[k]))
        continue;
      r.params = {ratio(B[pair[0]], B[k]).abs()};
      break;
    }
    if (r.params.empty())
      throw PreconditionError("balanced type-e configuration whose pair line misses the pentagon");
    r.map = Mat2{e1, e2};
    r.canonical = B;
    return r;
  }
  if (t.label == "d") {
    r.label = "iii";
    r.parts = t.parts;
    std::vector<IndexSet> pairs;
    IndexSet triple;
    for (const auto &p : t.parts)
      (p.size() == 2 ? pairs.push_back(p) : void(triple = p));
    auto on_line = [&](const IndexSet &pair) {
      for (auto k : triple)
        if (parallel(B[k], B[pair[0]]))
          return k;
      throw PreconditionError("triple has no vector on a pair line");
    };
    std::size_t t1 = on_line(pairs[0]), t2 = on_line(pairs[1]);
    Mat2 g = Mat2::from_columns(B[t1], B[t2]).inverse();
    Scalar lam = g.apply(B[pairs[0][0]])[0].abs();
    Scalar mu = g.apply(B[pairs[1][0]])[1].abs();
    r.params = {lam, mu};
    r.map = g;
    r.canonical = PlanarConfig({e1, e2, -(e1 + e2), lam * e1, -(lam * e1), mu * e2, -(mu * e2)});
    return r;
  }
  throw PreconditionError("balanced configuration classified as type " + t.label);
}

bool same_multiset(const std::vector<Vec2> &a, const std::vector<Vec2> &b) {
  if (a.size() != b.size())
    return false;
  std::vector<bool> used(b.size(), false);
  for (const auto &x : a) {
    bool hit = false;
    for (std::size_t k = 0; k < b.size() && !hit; ++k)
      if (!used[k] && b[k] == x)
        used[k] = hit = true;
    if (!hit)
      return false;
  }
  return true;
}

std::optional<Mat2> gl2_equivalence(const PlanarConfig &B, const PlanarConfig &C) {
  const std::size_t n = B.size();
  if (C.size() != n)
    return std::nullopt;
  std::optional<std::pair<std::size_t, std::size_t>> base;
  for (std::size_t i = 0; i < n && !base; ++i)
    for (std::size_t j = i + 1; j < n && !base; ++j)
      if (!parallel(B[i], B[j]))
        base = {i, j};

  if (base) {
    Mat2 Binv = Mat2::from_columns(B[base->first], B[base->second]).inverse();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        if (k == l || parallel(C[k], C[l]))
          continue;
        Mat2 g = Mat2::from_columns(C[k], C[l]) * Binv;
        if (same_multiset(B.transformed(g).vectors(), C.vectors()))
          return g;
      }
    return std::nullopt;
  }

  // B lies on a line (or is zero): compare scale multisets.
  auto first_nonzero = [](const PlanarConfig &X) -> std::optional<Vec2> {
    for (const auto &x : X.vectors())
      if (!is_zero(x))
        return x;
    return std::nullopt;
  };
  auto u = first_nonzero(B), w = first_nonzero(C);
  if (!u || !w)
    return (!u && !w) ? std::optional<Mat2>(Mat2::identity()) : std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l)
      if (!parallel(C[k], C[l]))
        return std::nullopt;
  std::vector<Scalar> s, t;
  for (const auto &b : B.vectors())
    s.push_back(ratio(b, *u));
  for (const auto &c : C.vectors())
    t.push_back(is_zero(c) ? promote_to(Scalar(0), c[0]) : ratio(c, *w));
  for (const auto &tk : t) {
    if (tk.is_zero())
      continue;
    const Scalar &kappa = tk; // u itself has scale 1
    std::vector<Scalar> scaled;
    for (const auto &si : s)
      scaled.push_back(kappa * si);
    if (same_scalars(scaled, t))
      return Mat2::from_columns(kappa * *w, perp(*w)) * Mat2::from_columns(*u, perp(*u)).inverse();
  }
  return std::nullopt;
}

PkPartition pk_partition(const PlanarConfig &B) {
  if (!is_uniform(B))
    throw PreconditionError("P^k sets need a uniform configuration");
  const std::size_t n = B.size();
  PkPartition P(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (i == k || j == k)
          continue;
        if ((det(B[k], B[i]) + det(B[k], B[j])).is_zero())
          P[k].push_back({i, j});
      }
  return P;
}

std::vector<std::size_t> counterclockwise_order(const PlanarConfig &B) {
  const double two_pi = 2 * std::acos(-1.0);
  std::vector<double> ang(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) {
    double a = std::atan2(B[i][1].to_double(), B[i][0].to_double());
    ang[i] = a < 0 ? a + two_pi : a;
  }
  std::vector<std::size_t> idx(B.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });
  return idx;
}

bool witness_holds(const PlanarConfig &B, const ClassificationResult &r) {
  auto is_partition = [&](const Partition &p) {
    std::vector<int> hits(B.size(), 0);
    for (const auto &part : p) {
      if (!is_zero(B.sum(part)))
        return false;
      for (auto i : part)
        ++hits.at(i);
    }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  };
  const auto &L = r.label;
  if (L == "a") {
    if (!r.cocircuit)
      return false;
    auto J = cocircuit_of(B, r.cocircuit->indices.front());
    auto st = cocircuit_status(B, J);
    return J.indices == r.cocircuit->indices && !st.splitting && !st.balanced;
  }
  if (L == "c" && B.size() != 5) {
    auto cs = cocircuit_parts(cocircuits(B));
    return is_partition(r.parts) && r.parts == cs;
  }
  if (L == "c")
    return r.parts.size() >= 2 && is_partition(r.parts);
  if (L == "d" || L == "iii")
    return is_partition(r.parts) && is_type_d(B, r.parts);
  if (L == "e" || L == "ii")
    return is_partition(r.parts) && type_e_split(B, r.parts).has_value();
  if (L == "b" && B.size() == 7) {
    if (!r.map)
      return false;
    auto T = B.kind() == ScalarKind::NumberField ? std::vector<PlanarConfig>{heptagon_template(B.field())}
             : B.kind() == ScalarKind::Numeric  ? heptagon_templates_numeric()
                                                : std::vector<PlanarConfig>{heptagon_template()};
    for (const auto &t : T)
      if (same_multiset(B.transformed(*r.map).vectors(), t.vectors()))
        return true;
    return false;
  }
  if (L == "b" && B.size() == 6)
    return is_partition(r.parts) && r.parts.size() == 2;
  if (L == "b")
    return is_irreducible(B) && is_balanced(B);
  if (L == "i" || L == "iv" || L == "v")
    return r.map && r.canonical && same_multiset(B.transformed(*r.map).vectors(), r.canonical->vectors());
  return false;
}

IntMatrix cayley_matrix(long gamma1, long gamma2, std::array<long, 2> alpha, std::array<long, 2> beta) {
  return IntMatrix{{1, 1, 0, 0, 0, 0, 0},
                   {0, 0, 1, 1, 0, 0, 0},
                   {0, 0, 0, 0, 1, 1, 1},
                   {0, gamma1, 0, 0, 0, alpha[0], beta[0]},
                   {0, 0, 0, gamma2, 0, alpha[1], beta[1]}};
}

std::size_t minkowski_dimension(const std::vector<std::vector<std::array<long, 2>>> &sets) {
  std::vector<std::vector<Integer>> rows;
  for (const auto &S : sets)
    for (std::size_t k = 1; k < S.size(); ++k)
      rows.push_back({Integer(S[k][0] - S[0][0]), Integer(S[k][1] - S[0][1])});
  if (rows.empty())
    return 0;
  return rank(IntMatrix::from_rows(rows));
}

namespace {

std::optional<std::array<long, 3>> integer_relation(const Vec2 &a, const Vec2 &b, const Vec2 &c) {
  // g a + p b + q c = 0 with b, c independent: (p, q) = -g * [b c]^{-1} a
  Mat2 M = Mat2::from_columns(b, c);
  if (M.determinant().is_zero())
    return std::nullopt;
  Vec2 y = M.inverse().apply(a);
  auto prim = primitive_integer({Rational(1), -y[0].as_rational(), -y[1].as_rational()});
  return std::array<long, 3>{prim[0].get_si(), prim[1].get_si(), prim[2].get_si()};
}

RatMatrix mul(const RatMatrix &X, const RatMatrix &Y) {
  RatMatrix Z(X.size(), std::vector<Rational>(Y.empty() ? 0 : Y[0].size(), Rational(0)));
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t k = 0; k < Y.size(); ++k)
      for (std::size_t j = 0; j < Z[i].size(); ++j)
        Z[i][j] += X[i][k] * Y[k][j];
  return Z;
}

RatMatrix transpose(const RatMatrix &X) {
  RatMatrix T(X.empty() ? 0 : X[0].size(), std::vector<Rational>(X.size()));
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X[i].size(); ++j)
      T[j][i] = X[i][j];
  return T;
}

} // namespace

CayleyDetection essential_cayley(const Configuration &cfg) {
  CayleyDetection out;
  if (cfg.d() != 5 || cfg.n() != 7)
    throw PreconditionError("essential Cayley detection expects a 5 x 7 configuration");
  IntMatrix K = kernel_basis(cfg.A);
  auto B = PlanarConfig::from_rows(K);
  auto rep = validate(B);
  if (!rep.ok()) {
    out.diagnostic = "Gale dual fails validation: " + join(rep.failures(), "; ");
    return out;
  }
  ClassificationResult cl;
  try {
    cl = classify(B, 7);
  } catch (const PreconditionError &e) {
    out.diagnostic = std::string("Gale dual could not be classified: ") + e.what();
    return out;
  }
  if (cl.label != "d") {
    out.diagnostic = "Gale dual has type " + cl.label + ", not d";
    return out;
  }
  std::vector<IndexSet> pairs;
  IndexSet triple;
  for (const auto &p : cl.parts)
    (p.size() == 2 ? pairs.push_back(p) : void(triple = p));

  auto r1 = integer_relation(B[pairs[0][1]], B[triple[1]], B[triple[2]]);
  auto r2 = integer_relation(B[pairs[1][1]], B[triple[1]], B[triple[2]]);
  if (!r1 || !r2) {
    out.diagnostic = "triple does not span the plane";
    return out;
  }
  CayleyStructure cs;
  cs.groups = {pairs[0], pairs[1], triple};
  cs.gamma1 = (*r1)[0];
  cs.gamma2 = (*r2)[0];
  cs.alpha = {(*r1)[1], (*r2)[1]};
  cs.beta = {(*r1)[2], (*r2)[2]};
  cs.point_sets = {{{0, 0}, {cs.gamma1, 0}}, {{0, 0}, {0, cs.gamma2}}, {{0, 0}, cs.alpha, cs.beta}};
  cs.variable_columns = {pairs[0][0], pairs[0][1], pairs[1][0], pairs[1][1], triple[0], triple[1], triple[2]};
  cs.cayley_matrix = cayley_matrix(cs.gamma1, cs.gamma2, cs.alpha, cs.beta);

  // certificate: the permuted A and the Cayley matrix share their row space
  IntMatrix Ap = cfg.A.select_cols(cs.variable_columns);
  RatMatrix A = to_rational(Ap), C = to_rational(cs.cayley_matrix);
  auto G = inverse_rational(mul(A, transpose(A)));
  if (!G) {
    out.diagnostic = "configuration matrix is rank deficient";
    return out;
  }
  cs.transform = mul(mul(C, transpose(A)), *G);
  if (mul(cs.transform, A) != C || !inverse_rational(cs.transform)) {
    out.diagnostic = "no affine map onto the Cayley form";
    return out;
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (minkowski_dimension({cs.point_sets[i]}) < 1) {
      out.diagnostic = "Cayley system is not essential";
      return out;
    }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (minkowski_dimension({cs.point_sets[i], cs.point_sets[j]}) < 2) {
        out.diagnostic = "Cayley system is not essential";
        return out;
      }
  out.structure = std::move(cs);
  return out;
}

} // namespace gkz
