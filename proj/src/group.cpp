#include "endslab/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <thread>

namespace endslab {

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ENDS_LAB_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

std::string GroupOracle::generator_name(int i) const {
  if (i >= 0 && i < 26) return std::string(1, (char)('a' + i));
  return "g" + std::to_string(i);
}

void GroupOracle::check_symbol(GeneratorSymbol s) const {
  if (s.index < 0 || s.index >= generator_count())
    throw MalformedWordError("generator index " + std::to_string(s.index) +
                             " out of range for " + name());
  if (s.sign != 1 && s.sign != -1)
    throw MalformedWordError("generator sign must be +1 or -1");
}

NormalForm GroupOracle::multiply(const NormalForm& g, GeneratorSymbol s) const {
  NormalForm out;
  multiply_into(g, s, out);
  return out;
}

NormalForm GroupOracle::canonical(const Word& w) const {
  NormalForm acc = identity(), tmp;
  for (GeneratorSymbol s : w) {
    multiply_into(acc, s, tmp);
    std::swap(acc, tmp);
  }
  return acc;
}

NormalForm GroupOracle::multiply_elements(const NormalForm& g,
                                          const NormalForm& h) const {
  Word wh;
  append_word(h, wh);
  NormalForm acc = g, tmp;
  for (GeneratorSymbol s : wh) {
    multiply_into(acc, s, tmp);
    std::swap(acc, tmp);
  }
  return acc;
}

NormalForm GroupOracle::generator_element(int i) const {
  return canonical({GeneratorSymbol{i, +1}});
}

Word GroupOracle::word_of(const NormalForm& g) const {
  Word w;
  append_word(g, w);
  return w;
}

NormalForm GroupOracle::inverse(const NormalForm& g) const {
  Word w;
  append_word(g, w);
  return canonical(inverse_word(w));
}

std::string signed_symbol_text(const std::string& gen_name, int sign) {
  std::string n = gen_name;
  if (sign > 0) return n;
  if (n.size() == 1 && n[0] >= 'a' && n[0] <= 'z') {
    n[0] = (char)(n[0] - 'a' + 'A');
    return n;
  }
  return n + "'";
}

std::string GroupOracle::describe(const NormalForm& g) const {
  Word w;
  append_word(g, w);
  if (w.empty()) return "1";
  std::string out;
  for (GeneratorSymbol s : w)
    out += signed_symbol_text(generator_name(s.index), s.sign);
  return out;
}

// ---------------------------------------------------------------------------
// Free groups: payload is the freely reduced word, letter i encoded as
// +-(i+1).
// ---------------------------------------------------------------------------

namespace {

class FreeGroupOracle final : public GroupOracle {
 public:
  explicit FreeGroupOracle(int rank) : rank_(rank) {
    if (rank < 1) throw ValidationError("free(n) needs n >= 1");
  }

  std::string name() const override {
    return "free(" + std::to_string(rank_) + ")";
  }
  int generator_count() const override { return rank_; }
  NormalForm identity() const override { return NormalForm(); }

  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override {
    check_symbol(s);
    int32_t letter = s.sign > 0 ? s.index + 1 : -(s.index + 1);
    auto& o = out.payload();
    o.assign(g.payload().begin(), g.payload().end());
    if (!o.empty() && o.back() == -letter)
      o.pop_back();
    else
      o.push_back(letter);
  }

  void append_word(const NormalForm& g, Word& out) const override {
    for (int32_t letter : g.payload())
      out.push_back(letter > 0 ? GeneratorSymbol{letter - 1, +1}
                               : GeneratorSymbol{-letter - 1, -1});
  }

  NormalForm inverse(const NormalForm& g) const override {
    std::vector<int32_t> v(g.payload().rbegin(), g.payload().rend());
    for (auto& x : v) x = -x;
    return NormalForm(std::move(v));
  }

 private:
  int rank_;
};

// ---------------------------------------------------------------------------
// Free abelian groups: payload is the coordinate vector.
// ---------------------------------------------------------------------------

class FreeAbelianOracle final : public GroupOracle {
 public:
  explicit FreeAbelianOracle(int rank) : rank_(rank) {
    if (rank < 1) throw ValidationError("Z^n needs n >= 1");
  }

  std::string name() const override {
    return rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
  }
  int generator_count() const override { return rank_; }
  NormalForm identity() const override {
    return NormalForm(std::vector<int32_t>(rank_, 0));
  }

  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override {
    check_symbol(s);
    auto& o = out.payload();
    o.assign(g.payload().begin(), g.payload().end());
    o[s.index] += s.sign;
  }

  void append_word(const NormalForm& g, Word& out) const override {
    for (int i = 0; i < rank_; ++i) {
      int32_t c = g[i];
      for (int32_t k = 0; k < (c < 0 ? -c : c); ++k)
        out.push_back({i, c > 0 ? +1 : -1});
    }
  }

  NormalForm inverse(const NormalForm& g) const override {
    std::vector<int32_t> v = g.payload();
    for (auto& x : v) x = -x;
    return NormalForm(std::move(v));
  }

  std::string describe(const NormalForm& g) const override {
    std::string out = "(";
    for (int i = 0; i < rank_; ++i)
      out += (i ? "," : "") + std::to_string(g[i]);
    return out + ")";
  }

 private:
  int rank_;
};

// ---------------------------------------------------------------------------
// Finite table groups: payload is the element index.
// ---------------------------------------------------------------------------

std::vector<Word> table_element_words(const FiniteGroupTable& t,
                                      int index_offset = 0) {
  const auto& gens = t.generators();
  std::vector<Word> words(t.order());
  std::vector<bool> seen(t.order(), false);
  seen[0] = true;
  std::vector<int> queue = {0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int g = queue[qi];
    for (int p = 0; p < (int)gens.size(); ++p) {
      for (int sign : {+1, -1}) {
        int e = sign > 0 ? gens[p] : t.inv(gens[p]);
        int h = t.mult(g, e);
        if (!seen[h]) {
          seen[h] = true;
          words[h] = words[g];
          words[h].push_back({p + index_offset, sign});
          queue.push_back(h);
        }
      }
    }
  }
  return words;
}

std::string table_element_text(int k) {
  return k == 0 ? "1" : "g" + std::to_string(k);
}

class FiniteTableOracle final : public GroupOracle {
 public:
  explicit FiniteTableOracle(FiniteGroupTable table)
      : table_(std::move(table)), words_(table_element_words(table_)) {}

  std::string name() const override { return table_.name(); }
  int generator_count() const override {
    return (int)table_.generators().size();
  }
  NormalForm identity() const override { return NormalForm({0}); }
  bool finite_hint() const override { return true; }

  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override {
    check_symbol(s);
    int e = table_.generators()[s.index];
    if (s.sign < 0) e = table_.inv(e);
    out.payload().assign({(int32_t)table_.mult(g[0], e)});
  }

  void append_word(const NormalForm& g, Word& out) const override {
    const Word& w = words_[g[0]];
    out.insert(out.end(), w.begin(), w.end());
  }

  NormalForm inverse(const NormalForm& g) const override {
    return NormalForm({(int32_t)table_.inv(g[0])});
  }

  std::string describe(const NormalForm& g) const override {
    return table_element_text(g[0]);
  }

  const FiniteGroupTable& table() const { return table_; }

 private:
  FiniteGroupTable table_;
  std::vector<Word> words_;
};

// Scratch forms for composite oracles; slots are handed out by recursion
// depth so nested composites never share a buffer.
NormalForm& scratch_form(int slot) {
  thread_local std::deque<NormalForm> pool;
  while ((int)pool.size() <= slot) pool.emplace_back();
  return pool[slot];
}

thread_local int scratch_depth = 0;

struct ScratchScope {
  int base;
  explicit ScratchScope(int slots) : base(scratch_depth) {
    scratch_depth += slots;
  }
  ~ScratchScope() { scratch_depth = base; }
  NormalForm& operator[](int i) const { return scratch_form(base + i); }
};

// ---------------------------------------------------------------------------
// Direct products: payload is [len(p1), p1..., p2...].
// ---------------------------------------------------------------------------

class ProductOracle final : public GroupOracle {
 public:
  ProductOracle(OraclePtr g1, OraclePtr g2)
      : g1_(std::move(g1)), g2_(std::move(g2)) {
    if (!g1_ || !g2_) throw ValidationError("product factor missing");
  }

  std::string name() const override {
    return "product(" + g1_->name() + ", " + g2_->name() + ")";
  }
  int generator_count() const override {
    return g1_->generator_count() + g2_->generator_count();
  }
  bool finite_hint() const override {
    return g1_->finite_hint() && g2_->finite_hint();
  }

  NormalForm identity() const override {
    return assemble(g1_->identity(), g2_->identity());
  }

  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override {
    check_symbol(s);
    const auto& v = g.payload();
    int32_t len1 = v[0];
    int n1 = g1_->generator_count();
    ScratchScope buf(2);
    NormalForm& part = buf[0];
    NormalForm& res = buf[1];
    auto& o = out.payload();
    if (s.index < n1) {
      part.payload().assign(v.begin() + 1, v.begin() + 1 + len1);
      g1_->multiply_into(part, s, res);
      const auto& rv = res.payload();
      o.clear();
      o.reserve(1 + rv.size() + (v.size() - 1 - len1));
      o.push_back((int32_t)rv.size());
      o.insert(o.end(), rv.begin(), rv.end());
      o.insert(o.end(), v.begin() + 1 + len1, v.end());
    } else {
      part.payload().assign(v.begin() + 1 + len1, v.end());
      g2_->multiply_into(part, {s.index - n1, s.sign}, res);
      const auto& rv = res.payload();
      o.clear();
      o.reserve(1 + len1 + rv.size());
      o.insert(o.end(), v.begin(), v.begin() + 1 + len1);
      o.insert(o.end(), rv.begin(), rv.end());
    }
  }

  void append_word(const NormalForm& g, Word& out) const override {
    NormalForm a, b;
    split(g, a, b);
    g1_->append_word(a, out);
    std::size_t mark = out.size();
    g2_->append_word(b, out);
    int n1 = g1_->generator_count();
    for (std::size_t i = mark; i < out.size(); ++i) out[i].index += n1;
  }

  NormalForm inverse(const NormalForm& g) const override {
    NormalForm a, b;
    split(g, a, b);
    return assemble(g1_->inverse(a), g2_->inverse(b));
  }

  std::string describe(const NormalForm& g) const override {
    NormalForm a, b;
    split(g, a, b);
    return "(" + g1_->describe(a) + "," + g2_->describe(b) + ")";
  }

  void split(const NormalForm& g, NormalForm& a, NormalForm& b) const {
    const auto& v = g.payload();
    int32_t len1 = v[0];
    a.payload().assign(v.begin() + 1, v.begin() + 1 + len1);
    b.payload().assign(v.begin() + 1 + len1, v.end());
  }

  static NormalForm assemble(const NormalForm& a, const NormalForm& b) {
    std::vector<int32_t> v;
    v.reserve(1 + a.size() + b.size());
    v.push_back((int32_t)a.size());
    v.insert(v.end(), a.payload().begin(), a.payload().end());
    v.insert(v.end(), b.payload().begin(), b.payload().end());
    return NormalForm(std::move(v));
  }

 private:
  OraclePtr g1_, g2_;
};

// ---------------------------------------------------------------------------
// K x| Z, t acting by an automorphism of K: payload [k, n], with
// (k, n) * (k', n') = (k * action^n(k'), n + n').
// ---------------------------------------------------------------------------

class SemidirectFZOracle final : public GroupOracle {
 public:
  SemidirectFZOracle(FiniteGroupTable table, std::vector<int> action,
                     std::string action_name)
      : table_(std::move(table)),
        words_(table_element_words(table_)),
        action_name_(std::move(action_name)) {
    if (!table_.is_automorphism(action))
      throw ValidationError("semidirect action is not an automorphism of " +
                            table_.name());
    // Powers of the action up to its order.
    std::vector<int> id(table_.order());
    for (int i = 0; i < table_.order(); ++i) id[i] = i;
    pows_.push_back(id);
    std::vector<int> cur = action;
    while (cur != id) {
      pows_.push_back(cur);
      std::vector<int> next(table_.order());
      for (int i = 0; i < table_.order(); ++i) next[i] = action[cur[i]];
      cur = std::move(next);
    }
  }

  std::string name() const override {
    return "semidirect_fz(" + table_.name() +
           (action_name_.empty() ? "" : ", " + action_name_) + ")";
  }
  int generator_count() const override {
    return (int)table_.generators().size() + 1;
  }
  NormalForm identity() const override { return NormalForm({0, 0}); }

  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override {
    check_symbol(s);
    int32_t k = g[0], n = g[1];
    if (s.index < (int)table_.generators().size()) {
      int e = table_.generators()[s.index];
      if (s.sign < 0) e = table_.inv(e);
      out.payload().assign({(int32_t)table_.mult(k, twisted(n, e)), n});
    } else {
      out.payload().assign({k, n + s.sign});
    }
  }

  void append_word(const NormalForm& g, Word& out) const override {
    const Word& w = words_[g[0]];
    out.insert(out.end(), w.begin(), w.end());
    int t = (int)table_.generators().size();
    int32_t n = g[1];
    for (int32_t i = 0; i < (n < 0 ? -n : n); ++i)
      out.push_back({t, n > 0 ? +1 : -1});
  }

  NormalForm inverse(const NormalForm& g) const override {
    int32_t k = g[0], n = g[1];
    return NormalForm({(int32_t)twisted(-n, table_.inv(k)), -n});
  }

  std::string describe(const NormalForm& g) const override {
    return "(" + table_element_text(g[0]) + "," + std::to_string(g[1]) + ")";
  }

 private:
  int twisted(int32_t n, int e) const {
    int ord = (int)pows_.size();
    int m = (int)(((n % ord) + ord) % ord);
    return pows_[m][e];
  }

  FiniteGroupTable table_;
  std::vector<Word> words_;
  std::vector<std::vector<int>> pows_;
  std::string action_name_;
};

// ---------------------------------------------------------------------------
// Z x| K, K acting by signs: payload [n, k] meaning t^n * k, with
// (n, k) * (n', k') = (n + sign[k]*n', k * k').
// ---------------------------------------------------------------------------

class SemidirectZFOracle final : public GroupOracle {
 public:
  SemidirectZFOracle(FiniteGroupTable table, std::vector<int> sign)
      : table_(std::move(table)),
        words_(table_element_words(table_, 1)),
        sign_(std::move(sign)) {
    if ((int)sign_.size() != table_.order())
      throw ValidationError("sign action has wrong size");
    for (int s : sign_)
      if (s != 1 && s != -1)
        throw ValidationError("sign action must map into {+1,-1}");
    if (sign_[0] != 1)
      throw ValidationError("sign action must fix the identity");
    for (int a = 0; a < table_.order(); ++a)
      for (int b = 0; b < table_.order(); ++b)
        if (sign_[table_.mult(a, b)] != sign_[a] * sign_[b])
          throw ValidationError("sign action is not a homomorphism");
  }

  std::string name() const override {
    return "semidirect_zf(" + table_.name() + ")";
  }
  int generator_count() const override {
    return 1 + (int)table_.generators().size();
  }
  NormalForm identity() const override { return NormalForm({0, 0}); }

  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override {
    check_symbol(s);
    int32_t n = g[0], k = g[1];
    if (s.index == 0) {
      out.payload().assign({n + s.sign * sign_[k], k});
    } else {
      int e = table_.generators()[s.index - 1];
      if (s.sign < 0) e = table_.inv(e);
      out.payload().assign({n, (int32_t)table_.mult(k, e)});
    }
  }

  void append_word(const NormalForm& g, Word& out) const override {
    int32_t n = g[0];
    for (int32_t i = 0; i < (n < 0 ? -n : n); ++i)
      out.push_back({0, n > 0 ? +1 : -1});
    const Word& w = words_[g[1]];
    out.insert(out.end(), w.begin(), w.end());
  }

  NormalForm inverse(const NormalForm& g) const override {
    int32_t n = g[0], k = g[1];
    return NormalForm({-sign_[k] * n, (int32_t)table_.inv(k)});
  }

  std::string describe(const NormalForm& g) const override {
    return "(" + std::to_string(g[0]) + "," + table_element_text(g[1]) + ")";
  }

 private:
  FiniteGroupTable table_;
  std::vector<Word> words_;
  std::vector<int> sign_;
};

// ---------------------------------------------------------------------------
// Quotients by a finite normal subgroup: payload is the payload-minimal
// element of the coset N*g in the base encoding.
// ---------------------------------------------------------------------------

class QuotientOracle final : public GroupOracle {
 public:
  QuotientOracle(OraclePtr base, std::vector<NormalForm> n_elems)
      : base_(std::move(base)) {
    std::set<NormalForm> s(n_elems.begin(), n_elems.end());
    if (!s.count(base_->identity()))
      throw ValidationError("N does not contain the identity");
    for (const auto& a : s) {
      if (!s.count(base_->inverse(a)))
        throw ValidationError("N is not closed under inversion");
      for (const auto& b : s)
        if (!s.count(base_->multiply_elements(a, b)))
          throw ValidationError("N is not closed under multiplication");
    }
    for (int i = 0; i < base_->generator_count(); ++i) {
      NormalForm e = base_->generator_element(i);
      NormalForm einv = base_->inverse(e);
      for (const auto& a : s) {
        NormalForm conj =
            base_->multiply_elements(base_->multiply_elements(einv, a), e);
        if (!s.count(conj))
          throw ValidationError(
              "N is not normal: conjugation by a generator leaves it");
      }
    }
    n_.assign(s.begin(), s.end());
    identity_ = reduce(base_->identity());
  }

  std::string name() const override {
    return "quotient(" + base_->name() + ", |N|=" + std::to_string(n_.size()) +
           ")";
  }
  int generator_count() const override { return base_->generator_count(); }
  bool finite_hint() const override { return base_->finite_hint(); }
  NormalForm identity() const override { return identity_; }

  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override {
    out = reduce(base_->multiply(g, s));
  }

  void append_word(const NormalForm& g, Word& out) const override {
    base_->append_word(g, out);
  }

  NormalForm inverse(const NormalForm& g) const override {
    return reduce(base_->inverse(g));
  }

  std::string describe(const NormalForm& g) const override {
    return "[" + base_->describe(g) + "]";
  }

 private:
  NormalForm reduce(const NormalForm& g) const {
    NormalForm best;
    bool have = false;
    for (const auto& a : n_) {
      NormalForm cand = base_->multiply_elements(a, g);
      if (!have || cand < best) {
        best = std::move(cand);
        have = true;
      }
    }
    return best;
  }

  OraclePtr base_;
  std::vector<NormalForm> n_;
  NormalForm identity_;
};

}  // namespace

OraclePtr free_group(int rank) {
  return std::make_shared<FreeGroupOracle>(rank);
}

OraclePtr free_abelian(int rank) {
  return std::make_shared<FreeAbelianOracle>(rank);
}

OraclePtr finite_group(FiniteGroupTable table) {
  return std::make_shared<FiniteTableOracle>(std::move(table));
}

OraclePtr product(OraclePtr g1, OraclePtr g2) {
  return std::make_shared<ProductOracle>(std::move(g1), std::move(g2));
}

OraclePtr semidirect_finite_by_z(FiniteGroupTable k, std::vector<int> action,
                                 std::string action_name) {
  return std::make_shared<SemidirectFZOracle>(std::move(k), std::move(action),
                                              std::move(action_name));
}

OraclePtr semidirect_z_by_finite(FiniteGroupTable k, std::vector<int> sign) {
  return std::make_shared<SemidirectZFOracle>(std::move(k), std::move(sign));
}

OraclePtr quotient_by_finite_normal(OraclePtr base,
                                    std::vector<NormalForm> normal_subgroup) {
  return std::make_shared<QuotientOracle>(std::move(base),
                                          std::move(normal_subgroup));
}

}  // namespace endslab
