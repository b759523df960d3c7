#include "endslab/normal_forms.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

namespace endslab {

namespace {

void check_embedding(const FiniteGroupTable& c, const FiniteGroupTable& f,
                     const std::vector<int>& emb, const char* which) {
  if ((int)emb.size() != c.order())
    throw ValidationError(std::string("embedding ") + which +
                          " has wrong domain size");
  std::set<int> image;
  for (int x : emb) {
    if (x < 0 || x >= f.order())
      throw ValidationError(std::string("embedding ") + which +
                            " maps outside the factor");
    if (!image.insert(x).second)
      throw ValidationError(std::string("embedding ") + which +
                            " is not injective");
  }
  if (emb[0] != 0)
    throw ValidationError(std::string("embedding ") + which +
                          " does not preserve the identity");
  for (int x = 0; x < c.order(); ++x)
    for (int y = 0; y < c.order(); ++y)
      if (emb[c.mult(x, y)] != f.mult(emb[x], emb[y]))
        throw ValidationError(std::string("embedding ") + which +
                              " is not a homomorphism");
  if (!f.is_subgroup(std::vector<int>(image.begin(), image.end())))
    throw ValidationError(std::string("embedding ") + which +
                          " image is not a subgroup");
}

// For the subgroup image `sub` of `f`, fill per-element arrays: membership
// (position in `sub_index` or -1), the minimal-index right-coset
// representative of sub*x, and the subgroup part of x = s * rep.
void coset_decomposition(const FiniteGroupTable& f, const std::vector<int>& sub,
                         std::vector<int>& in_sub, std::vector<int>& rep,
                         std::vector<int>& head) {
  int n = f.order();
  in_sub.assign(n, -1);
  for (int i = 0; i < (int)sub.size(); ++i) in_sub[sub[i]] = i;
  rep.assign(n, -1);
  head.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (rep[x] >= 0) continue;
    int r = n;
    for (int s : sub) r = std::min(r, f.mult(s, x));
    for (int s : sub) {
      int y = f.mult(s, x);
      rep[y] = r;
      head[y] = f.mult(y, f.inv(r));  // y = head * rep
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Amalgamated free products
// ---------------------------------------------------------------------------

AmalgamOracle::AmalgamOracle(AmalgamSpec spec, std::string display_name)
    : spec_(std::move(spec)), display_name_(std::move(display_name)) {
  check_embedding(spec_.c, spec_.a, spec_.c_in_a, "C->A");
  check_embedding(spec_.c, spec_.b, spec_.c_in_b, "C->B");
  for (int f = 0; f < 2; ++f) {
    const FiniteGroupTable& t = f == 0 ? spec_.a : spec_.b;
    const std::vector<int>& emb = f == 0 ? spec_.c_in_a : spec_.c_in_b;
    std::vector<int> image(emb.begin(), emb.end());
    std::sort(image.begin(), image.end());
    coset_decomposition(t, image, in_c_[f], rep_[f], head_[f]);
    // in_c_ holds positions within the sorted image; remap to C indices.
    std::vector<int> pos_to_c(emb.size());
    for (int ci = 0; ci < (int)emb.size(); ++ci) {
      auto it = std::lower_bound(image.begin(), image.end(), emb[ci]);
      pos_to_c[it - image.begin()] = ci;
    }
    for (int x = 0; x < t.order(); ++x) {
      if (in_c_[f][x] >= 0) in_c_[f][x] = pos_to_c[in_c_[f][x]];
      auto it = std::lower_bound(image.begin(), image.end(), head_[f][x]);
      head_[f][x] = pos_to_c[it - image.begin()];
    }
  }
}

std::string AmalgamOracle::name() const {
  if (!display_name_.empty()) return display_name_;
  return "amalgam(" + spec_.a.name() + ", " + spec_.b.name() + ", " +
         spec_.c.name() + ")";
}

int AmalgamOracle::generator_count() const {
  return spec_.a.order() - 1 + spec_.b.order() - 1;
}

int AmalgamOracle::factor_of_letter(int32_t letter) const {
  return letter <= spec_.a.order() - 1 ? 0 : 1;
}

int AmalgamOracle::elem_of_letter(int32_t letter) const {
  return letter <= spec_.a.order() - 1 ? letter
                                       : letter - (spec_.a.order() - 1);
}

std::vector<std::pair<int, int>> AmalgamOracle::letters_of(
    const NormalForm& g) const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 1; i < g.size(); ++i)
    out.emplace_back(factor_of_letter(g[i]), elem_of_letter(g[i]));
  return out;
}

void AmalgamOracle::push_c_left(std::vector<int32_t>& v, std::size_t i,
                                int c) const {
  while (c != 0) {
    if (i == 0) {
      v[0] = spec_.c.mult(v[0], c);
      return;
    }
    int f = factor_of_letter(v[i]);
    const FiniteGroupTable& t = f == 0 ? spec_.a : spec_.b;
    const std::vector<int>& emb = f == 0 ? spec_.c_in_a : spec_.c_in_b;
    int p = t.mult(elem_of_letter(v[i]), emb[c]);
    // p stays outside the C image: letters never collapse while pushing.
    assert(in_c_[f][p] < 0);
    int r = rep_[f][p];
    v[i] = f == 0 ? r : r + spec_.a.order() - 1;
    c = head_[f][p];
    --i;
  }
}

void AmalgamOracle::multiply_into(const NormalForm& g, GeneratorSymbol s,
                                  NormalForm& out) const {
  check_symbol(s);
  int32_t letter = s.index + 1;
  int f = factor_of_letter(letter);
  const FiniteGroupTable& t = f == 0 ? spec_.a : spec_.b;
  const std::vector<int>& emb = f == 0 ? spec_.c_in_a : spec_.c_in_b;
  int e = elem_of_letter(letter);
  if (s.sign < 0) e = t.inv(e);

  auto& v = out.payload();
  v.assign(g.payload().begin(), g.payload().end());
  if (e == 0) return;

  if (in_c_[f][e] >= 0) {
    push_c_left(v, v.size() - 1, in_c_[f][e]);
    return;
  }
  if (v.size() > 1 && factor_of_letter(v.back()) == f) {
    int p = t.mult(elem_of_letter(v.back()), e);
    if (p == 0) {
      v.pop_back();
      return;
    }
    if (in_c_[f][p] >= 0) {
      v.pop_back();
      push_c_left(v, v.size() - 1, in_c_[f][p]);
      return;
    }
    int r = rep_[f][p];
    v.back() = f == 0 ? r : r + spec_.a.order() - 1;
    push_c_left(v, v.size() - 2, head_[f][p]);
    return;
  }
  int r = rep_[f][e];
  int c = head_[f][e];
  push_c_left(v, v.size() - 1, c);
  v.push_back(f == 0 ? r : r + spec_.a.order() - 1);
}

void AmalgamOracle::append_word(const NormalForm& g, Word& out) const {
  if (g[0] != 0) out.push_back({spec_.c_in_a[g[0]] - 1, +1});
  for (std::size_t i = 1; i < g.size(); ++i)
    out.push_back({(int)g[i] - 1, +1});
}

// ---------------------------------------------------------------------------
// HNN extensions
// ---------------------------------------------------------------------------

HnnOracle::HnnOracle(HnnSpec spec, std::string display_name)
    : spec_(std::move(spec)), display_name_(std::move(display_name)) {
  const FiniteGroupTable& a = spec_.a;
  for (const std::vector<int>* sub : {&spec_.c1, &spec_.c2})
    if (!a.is_subgroup(*sub))
      throw ValidationError("C1/C2 is not a subgroup of A");
  if (spec_.c1.size() != spec_.c2.size())
    throw ValidationError("phi cannot be a bijection: |C1| != |C2|");
  if ((int)spec_.phi.size() != a.order())
    throw ValidationError("phi map has wrong size");
  std::set<int> c1(spec_.c1.begin(), spec_.c1.end());
  std::set<int> c2(spec_.c2.begin(), spec_.c2.end());
  std::set<int> image;
  for (int x = 0; x < a.order(); ++x) {
    if (c1.count(x) != (spec_.phi[x] >= 0 ? 1u : 0u))
      throw ValidationError("phi must be defined exactly on C1");
    if (spec_.phi[x] >= 0) {
      if (!c2.count(spec_.phi[x]))
        throw ValidationError("phi maps outside C2");
      if (!image.insert(spec_.phi[x]).second)
        throw ValidationError("phi is not injective");
    }
  }
  if (image.size() != c2.size())
    throw ValidationError("phi is not onto C2");
  for (int x : spec_.c1)
    for (int y : spec_.c1)
      if (spec_.phi[a.mult(x, y)] != a.mult(spec_.phi[x], spec_.phi[y]))
        throw ValidationError("phi is not a homomorphism");

  phi_inv_.assign(a.order(), -1);
  for (int x : spec_.c1) phi_inv_[spec_.phi[x]] = x;

  std::vector<int> c1v(c1.begin(), c1.end()), c2v(c2.begin(), c2.end());
  coset_decomposition(a, c1v, in_c_[0], rep_[0], head_[0]);
  coset_decomposition(a, c2v, in_c_[1], rep_[1], head_[1]);
}

std::string HnnOracle::name() const {
  if (!display_name_.empty()) return display_name_;
  return "hnn(" + spec_.a.name() + ", |C|=" + std::to_string(spec_.c1.size()) +
         ")";
}

std::vector<std::pair<int, int>> HnnOracle::steps_of(
    const NormalForm& g) const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 1; i + 1 < g.size(); i += 2)
    out.emplace_back(g[i], g[i + 1]);
  return out;
}

int HnnOracle::cross(int eps, int c) const {
  return eps < 0 ? spec_.phi[c] : phi_inv_[c];
}

void HnnOracle::push_a_left(std::vector<int32_t>& v, std::size_t pairs,
                            int x) const {
  const FiniteGroupTable& a = spec_.a;
  while (x != 0) {
    if (pairs == 0) {
      v[0] = a.mult(v[0], x);
      return;
    }
    std::size_t ri = 2 * pairs;     // index of r_pairs
    int eps = v[ri - 1];
    int side = eps < 0 ? 0 : 1;
    int p = a.mult(v[ri], x);
    int c = head_[side][p];
    v[ri] = rep_[side][p];
    // A-multiplication cannot create a pinch (length l is invariant).
    assert(!(v[ri] == 0 && ri + 1 < v.size() && v[ri + 1] == -eps));
    x = cross(eps, c);
    --pairs;
  }
}

void HnnOracle::multiply_into(const NormalForm& g, GeneratorSymbol s,
                              NormalForm& out) const {
  check_symbol(s);
  const FiniteGroupTable& a = spec_.a;
  auto& v = out.payload();
  v.assign(g.payload().begin(), g.payload().end());

  if (s.index == stable_letter_index()) {
    int sigma = s.sign;
    std::size_t pairs = (v.size() - 1) / 2;
    if (pairs > 0 && v[v.size() - 2] == -sigma && v.back() == 0) {
      v.pop_back();
      v.pop_back();
    } else {
      v.push_back(sigma);
      v.push_back(0);
    }
    return;
  }

  int e = s.index + 1;
  if (s.sign < 0) e = a.inv(e);
  push_a_left(v, (v.size() - 1) / 2, e);
}

void HnnOracle::append_word(const NormalForm& g, Word& out) const {
  if (g[0] != 0) out.push_back({(int)g[0] - 1, +1});
  for (std::size_t i = 1; i + 1 < g.size(); i += 2) {
    out.push_back({stable_letter_index(), (int)g[i]});
    if (g[i + 1] != 0) out.push_back({(int)g[i + 1] - 1, +1});
  }
}

// ---------------------------------------------------------------------------

ReducedForm amalgam_reduce(const AmalgamOracle& oracle, const Word& w) {
  ReducedForm rf;
  rf.form = oracle.canonical(w);
  rf.length = oracle.reduced_length(rf.form);
  return rf;
}

ReducedForm britton_reduce(const HnnOracle& oracle, const Word& w) {
  ReducedForm rf;
  rf.form = oracle.canonical(w);
  rf.length = oracle.reduced_length(rf.form);
  return rf;
}

std::shared_ptr<const AmalgamOracle> amalgam(AmalgamSpec spec,
                                             std::string display_name) {
  return std::make_shared<AmalgamOracle>(std::move(spec),
                                         std::move(display_name));
}

std::shared_ptr<const HnnOracle> hnn(HnnSpec spec, std::string display_name) {
  return std::make_shared<HnnOracle>(std::move(spec), std::move(display_name));
}

std::shared_ptr<const AmalgamOracle> amalgam_of_cyclics(int m, int n, int d) {
  if (m < 1 || n < 1 || d < 1 || m % d != 0 || n % d != 0)
    throw ValidationError("amalgam(cyclic(m), cyclic(n), d) needs d | gcd(m,n)");
  AmalgamSpec spec{cyclic_table(m), cyclic_table(n), cyclic_table(d), {}, {}};
  for (int j = 0; j < d; ++j) {
    spec.c_in_a.push_back(j * (m / d) % m);
    spec.c_in_b.push_back(j * (n / d) % n);
  }
  return amalgam(std::move(spec),
                 "amalgam(cyclic(" + std::to_string(m) + "), cyclic(" +
                     std::to_string(n) + "), " + std::to_string(d) + ")");
}

std::shared_ptr<const HnnOracle> hnn_of_cyclic(int m, int d, int e) {
  if (m < 1 || d < 1 || m % d != 0)
    throw ValidationError("hnn(cyclic(m), d) needs d | m");
  if (std::gcd(e % d + d, d) != 1)
    throw ValidationError("hnn exponent e must be a unit mod d");
  HnnSpec spec{cyclic_table(m), {}, {}, std::vector<int>(m, -1)};
  for (int j = 0; j < d; ++j) {
    int z = j * (m / d) % m;
    spec.c1.push_back(z);
    spec.c2.push_back(z);
    spec.phi[z] = (j * e % d + d) % d * (m / d) % m;
  }
  std::string nm = "hnn(cyclic(" + std::to_string(m) + "), " +
                   std::to_string(d) +
                   (e == 1 ? "" : ", " + std::to_string(e)) + ")";
  return hnn(std::move(spec), std::move(nm));
}

}  // namespace endslab
