#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dsrl/corpus.hpp"
#include "dsrl/scorer.hpp"

#ifndef DSRL_FIXTURE_DIR
#define DSRL_FIXTURE_DIR "tests/fixtures"
#endif

namespace dsrl::testing {

std::string fixture(const std::string& name);  // file contents

// Reference trigram hasher, written from the published parameters without
// reusing the library's code: bucket -> raw count.
std::map<std::size_t, int> reference_trigram_counts(const std::string& text);
std::vector<double> reference_embedding(const std::string& text);

double brute_cosine(const std::vector<double>& u, const std::vector<double>& v);

struct OracleCounts {
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

// Scores by materializing item tuples into sets and intersecting them.
OracleCounts oracle_score(const Corpus& gold, const Corpus& pred,
                          ScorerKind kind);

}  // namespace dsrl::testing
