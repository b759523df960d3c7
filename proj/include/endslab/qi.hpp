#pragma once

#include <string>
#include <vector>

#include "endslab/ends.hpp"
#include "endslab/graph.hpp"
#include "endslab/group.hpp"

namespace endslab {

// A change of finite generating set: the same group (same canonical forms)
// under a new alphabet, with translation tables in both directions.
struct GeneratingSetChange {
  OraclePtr base;
  OraclePtr changed;
  std::vector<Word> new_in_old;  // new generator i as a word over the old set
  std::vector<Word> old_in_new;  // old generator i as a word over the new set
};

// Validates that `new_gens` generates (every old generator expressible by a
// word of length <= search_bound over the new set) and builds the changed
// oracle.  Throws ValidationError when the search bound is exhausted.
GeneratingSetChange change_generators(OraclePtr oracle,
                                      std::vector<Word> new_gens,
                                      int search_bound = 6,
                                      std::size_t search_budget = 1'000'000);

struct QiConstants {
  double lambda = 1.0;
  double epsilon = 0.0;
};

// lambda = max translation-table word length, epsilon = 0: the identity map
// between the two word metrics is bi-Lipschitz.
QiConstants qi_constants(const GeneratingSetChange& change);

// Sampling certificate: checks the (lambda, epsilon) inequalities on all
// pairs of elements lying in the radius-`radius` balls of both metrics.
struct QiCertificate {
  QiConstants constants;
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  bool holds = true;
};

QiCertificate qi_certificate(const GeneratingSetChange& change, int radius = 4,
                             const BallOptions& opts = {});

enum class CompareVerdict { equal, not_equal, inconclusive };
std::string to_string(CompareVerdict v);

struct CompareResult {
  CompareVerdict verdict = CompareVerdict::inconclusive;
  EndsProfile first;
  EndsProfile second;
};

// True end-classification agreement between two graph oracles; inconclusive
// when either profile fails to converge.
CompareResult compare_end_classification(const RootedGraphOracle& o1,
                                         const RootedGraphOracle& o2,
                                         int r_max, int R_max,
                                         const ProfileOptions& opts = {});

}  // namespace endslab
