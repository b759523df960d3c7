#pragma once

#include <memory>
#include <string>
#include <vector>

#include "endslab/base.hpp"
#include "endslab/finite_group.hpp"
#include "endslab/group.hpp"

namespace endslab {

// Amalgamated free product A *_C B of finite groups over a common finite
// subgroup C, given by injective embeddings of C into both factors.
struct AmalgamSpec {
  FiniteGroupTable a;
  FiniteGroupTable b;
  FiniteGroupTable c;
  std::vector<int> c_in_a;  // C index -> A index
  std::vector<int> c_in_b;  // C index -> B index
};

// HNN extension A *_phi over an isomorphism phi between two subgroups of A.
// Convention: t^-1 c t = phi(c) for c in C1, so the forbidden (pinch)
// subwords are t^-1 (C1) t and t (C2) t^-1.
struct HnnSpec {
  FiniteGroupTable a;
  std::vector<int> c1;   // subgroup of A, as element indices
  std::vector<int> c2;   // subgroup of A
  std::vector<int> phi;  // size |A|: A index -> image, -1 off C1
};

// A canonical reduced form together with its length l(g): for amalgams the
// number of alternating factor letters, for HNN the number of stable-letter
// occurrences.  Two words represent the same element iff their forms are
// equal.
struct ReducedForm {
  NormalForm form;
  int length = 0;
};

inline int length(const ReducedForm& rf) { return rf.length; }

// Group oracle for A *_C B.  Generators are all non-identity elements of A
// then of B.  Payload: [c, t_1, ..., t_n] where c is a C index and each t_i
// encodes a non-identity right-coset representative of C in its factor,
// factors alternating; C-parts are pushed left into the head.
class AmalgamOracle final : public GroupOracle {
 public:
  explicit AmalgamOracle(AmalgamSpec spec, std::string display_name = "");

  std::string name() const override;
  int generator_count() const override;
  NormalForm identity() const override { return NormalForm({0}); }
  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override;
  void append_word(const NormalForm& g, Word& out) const override;

  int head_of(const NormalForm& g) const { return g[0]; }
  // Letters as (factor, element) pairs; factor 0 = A, 1 = B.
  std::vector<std::pair<int, int>> letters_of(const NormalForm& g) const;
  int reduced_length(const NormalForm& g) const { return (int)g.size() - 1; }

  const AmalgamSpec& spec() const { return spec_; }

 private:
  int factor_of_letter(int32_t letter) const;
  int elem_of_letter(int32_t letter) const;
  // Multiplies the C element c into the prefix seq[0..i) of the form.
  void push_c_left(std::vector<int32_t>& v, std::size_t i, int c) const;

  AmalgamSpec spec_;
  std::string display_name_;
  // Per factor: C-image membership (C index or -1), right-coset
  // representative, and C-part of the decomposition f = e(c) * rep.
  std::vector<int> in_c_[2], rep_[2], head_[2];
};

// Group oracle for A *_phi.  Generators are all non-identity elements of A
// then the stable letter t.  Payload: [a0, eps_1, r_1, ..., eps_n, r_n]
// where a0 is any A element, eps_i = +-1, and r_i is the right-coset
// representative of C1 (eps_i = -1) or C2 (eps_i = +1) in A; no pinches.
class HnnOracle final : public GroupOracle {
 public:
  explicit HnnOracle(HnnSpec spec, std::string display_name = "");

  std::string name() const override;
  int generator_count() const override { return spec_.a.order(); }
  NormalForm identity() const override { return NormalForm({0}); }
  void multiply_into(const NormalForm& g, GeneratorSymbol s,
                     NormalForm& out) const override;
  void append_word(const NormalForm& g, Word& out) const override;

  int stable_letter_index() const { return spec_.a.order() - 1; }
  int head_of(const NormalForm& g) const { return g[0]; }
  std::vector<std::pair<int, int>> steps_of(const NormalForm& g) const;
  int reduced_length(const NormalForm& g) const {
    return (int)(g.size() - 1) / 2;
  }

  const HnnSpec& spec() const { return spec_; }

 private:
  // Multiplies A element x into the form immediately left of t^{eps_{i+1}}.
  void push_a_left(std::vector<int32_t>& v, std::size_t pairs, int x) const;
  int cross(int eps, int c) const;  // move c in C(eps) left across t^eps

  HnnSpec spec_;
  std::string display_name_;
  std::vector<int> in_c_[2], rep_[2], head_[2];  // [0] for C1, [1] for C2
  std::vector<int> phi_inv_;
};

// Rewriting entry points realizing the Reduced Form Theorems.
ReducedForm amalgam_reduce(const AmalgamOracle& oracle, const Word& w);
ReducedForm britton_reduce(const HnnOracle& oracle, const Word& w);

// Built-in families used by the DSL: cyclic factors amalgamated over the
// order-d subgroup, and the HNN extension of cyclic(m) over its order-d
// subgroup with phi(z) = z^e.
std::shared_ptr<const AmalgamOracle> amalgam_of_cyclics(int m, int n, int d);
std::shared_ptr<const HnnOracle> hnn_of_cyclic(int m, int d, int e = 1);

// General constructors with validation.
std::shared_ptr<const AmalgamOracle> amalgam(AmalgamSpec spec,
                                             std::string display_name = "");
std::shared_ptr<const HnnOracle> hnn(HnnSpec spec,
                                     std::string display_name = "");

}  // namespace endslab
