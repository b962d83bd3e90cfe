// Brute-force enumeration of real rank one super Satake diagrams over the
// family catalog, with deduplication up to decorated-diagram isomorphism and
// labeling against the known classification tables.

#pragma once

#include "superpairs/satake.hpp"

namespace qsp {

struct Rank1Entry {
  std::string label;  // e.g. "sAI", "sCII", "BII"; "?" when unmatched
  int rank = 0;
  long alpha = 0;  // for the D(2|1;a) rows
  std::string dsl;
  int theta_order = 0;
};

// kind: 'o' for real odd rank one over the super families, 'e' for real even
// rank one over the purely even classical data
std::vector<Rank1Entry> enumerate_rank1(char kind, int max_rank,
                                        long alpha_max = 3);

// the label a single admissible rank-one pair should carry ("?" if none)
std::string rank1_label(const SatakePair& pair);

// expected (label, rank, alpha) triples per the classification tables
std::vector<Rank1Entry> expected_rank1(char kind, int max_rank,
                                       long alpha_max = 3);

// all pairs (admissible or not) over a fixed datum: every black subset of
// even nodes combined with every compatible involution
std::vector<SatakePair> all_pairs_on(const RootDatum& dt);

// the family catalog of data at a given rank (super families for 'o',
// classical for 'e')
std::vector<RootDatum> family_catalog(char kind, int rank, long alpha_max = 3);

// canonical key of a pair up to node relabeling (and global form sign)
std::string pair_key(const SatakePair& pair);

nlohmann::ordered_json rank1_to_json(const std::vector<Rank1Entry>& entries);

}  // namespace qsp
