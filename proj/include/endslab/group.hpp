#pragma once

#include <memory>
#include <string>
#include <vector>

#include "endslab/base.hpp"
#include "endslab/finite_group.hpp"

namespace endslab {

// Word-problem engine for one finitely generated group: a fixed generating
// set plus canonical-form arithmetic.  Oracles are immutable after
// construction; every operation is a pure function of its inputs.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual std::string name() const = 0;
  virtual int generator_count() const = 0;
  virtual std::string generator_name(int i) const;

  virtual NormalForm identity() const = 0;

  // Canonical form of g*s.  `out` may alias nothing; it is overwritten.
  virtual void multiply_into(const NormalForm& g, GeneratorSymbol s,
                             NormalForm& out) const = 0;

  // A word over this oracle's generators whose canonical form is g.
  virtual void append_word(const NormalForm& g, Word& out) const = 0;

  virtual NormalForm inverse(const NormalForm& g) const;

  virtual std::string describe(const NormalForm& g) const;

  virtual bool finite_hint() const { return false; }

  NormalForm multiply(const NormalForm& g, GeneratorSymbol s) const;
  NormalForm canonical(const Word& w) const;
  NormalForm multiply_elements(const NormalForm& g, const NormalForm& h) const;
  NormalForm generator_element(int i) const;
  Word word_of(const NormalForm& g) const;

  void check_symbol(GeneratorSymbol s) const;
  bool is_identity(const NormalForm& g) const { return g == identity(); }
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

// Free group of rank n; canonical forms are freely reduced words.
OraclePtr free_group(int rank);

// Free abelian group Z^n; canonical forms are integer vectors.
OraclePtr free_abelian(int rank);
inline OraclePtr integers() { return free_abelian(1); }

// Finite group from a validated multiplication table; generating set is the
// table's greedy minimal one.
OraclePtr finite_group(FiniteGroupTable table);
inline OraclePtr cyclic_group(int n) { return finite_group(cyclic_table(n)); }

// Direct product G1 x G2.  Generators: G1's then G2's, acting on their
// component.  Forms are pairs of component forms.
OraclePtr product(OraclePtr g1, OraclePtr g2);

// Semidirect product K x| Z of a finite group K by Z = <t>, with t acting on
// K by the automorphism `action` (element index -> element index).
// Multiplication: (k, n) * (k', n') = (k * action^n(k'), n + n').
// Generators: K's generators (as (k,0)) then t = (1,1).
OraclePtr semidirect_finite_by_z(FiniteGroupTable k, std::vector<int> action,
                                 std::string action_name = "");

// Semidirect product Z x| K of Z = <t> by a finite group K acting through
// signs: sign[k] in {+1,-1}, a homomorphism K -> Aut(Z).  Elements t^n * k.
// Generators: t = (1, identity) then K's generators.
OraclePtr semidirect_z_by_finite(FiniteGroupTable k, std::vector<int> sign);

// Quotient of `base` by the finite normal subgroup N (validated: closed under
// multiplication, inversion, and conjugation by generators).  Forms are the
// payload-minimal coset representatives; generators are the images of base's.
OraclePtr quotient_by_finite_normal(OraclePtr base,
                                    std::vector<NormalForm> normal_subgroup);

// "a" / "A" style display of one word letter.
std::string signed_symbol_text(const std::string& gen_name, int sign);

}  // namespace endslab
