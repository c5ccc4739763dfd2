#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "icm/module.hpp"

namespace icm {

/// N generated by r + 1 seeded combinations of the minimal generators of M.
struct ReductionSample {
  std::uint64_t seed = 0;
  std::vector<std::vector<FieldElement>> scalars;  // (r + 1) x nu
  TFModule reduction;
  int colength = 0;
  int draws = 1;
};

ReductionSample generic_reduction(const TFModule& m, std::uint64_t seed, const Config& cfg = default_config());

struct MultiplicityEstimate {
  int value = 0;
  std::vector<int> samples;
  std::vector<std::uint64_t> seeds;
  /// All samples agree.
  bool stable = true;
};

/// Seeds seed, seed + 1, ...; the minimum colength over the samples.
MultiplicityEstimate br_multiplicity_samples(const TFModule& m, std::uint64_t seed, std::size_t samples,
                                             const Config& cfg = default_config());
int br_multiplicity_reduction(const TFModule& m, std::uint64_t seed = 1, const Config& cfg = default_config());

struct GrowthTable {
  std::vector<long long> colengths;  // lambda(S_n F / S_n M) for n = 1, ..., n_max
  std::vector<Rational> coefficients;  // fitted polynomial in n, constant term first
  Rational leading;
  long long multiplicity = 0;
};

GrowthTable br_multiplicity_growth(const TFModule& m, int n_max, const Config& cfg = default_config());

int samuel_multiplicity(const TFModule& i, std::uint64_t seed = 1, const Config& cfg = default_config());

/// Whether v is integral over M, by comparing the minors ideals of M and M + v.
bool is_integral_element(const Column& v, const TFModule& m, std::uint64_t seed = 1,
                         const Config& cfg = default_config());

/// Monomials on or above the Newton polygon of the generators.
TFModule monomial_ideal_closure(const TFModule& i);

struct FormulaCheck {
  std::string name;
  bool applicable = true;
  bool holds = false;
  long long lhs = 0;
  long long rhs = 0;
  std::vector<long long> per_seed;
  std::string detail;
};

/// lambda(M/N) = binom(ord, 2) for every reduction sample.
FormulaCheck verify_reduction_length(const TFModule& m, std::uint64_t seed = 1, std::size_t samples = 5,
                           const Config& cfg = default_config());
/// e(M) = lambda(F/M) + binom(ord, 2).
FormulaCheck verify_local_formula(const TFModule& m, std::uint64_t seed = 1, const Config& cfg = default_config());
/// e(M) = e(I(M)) - lambda(R/I(M)) + lambda(F/M).
FormulaCheck verify_mult_formula(const TFModule& m, std::uint64_t seed = 1, const Config& cfg = default_config());
/// e(M) = sum over the decomposition tree of e(contracted part) [T:R].
FormulaCheck verify_tree_multiplicity(const TFModule& m, std::uint64_t seed = 1, const Config& cfg = default_config());

}  // namespace icm
