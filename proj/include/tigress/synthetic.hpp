#pragma once

#include "tigress/data.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tigress {

struct SyntheticSpec {
  int genes = 50;
  int tfs = 10;
  int samples = 100;
  int edges = 60;
  double noise_sd = 0.5;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SyntheticData {
  ExpressionMatrix expr;
  std::vector<std::string> tf_ids;
  GoldStandard gold;
};

/// Random linear benchmark. Genes G1..Gp are topologically ordered with the
/// TFs first; each edge goes from a TF to a later gene, so the network is a
/// DAG. Parentless genes are N(0, 1); every other gene is a signed random
/// combination of its parents, rescaled to unit sample variance, plus
/// N(0, noise_sd^2) noise.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace tigress
