#pragma once

#include <cstddef>
#include <cstdint>

namespace icm {

/// Engineering limits and defaults. None of these are baked into algorithms;
/// every routine that needs one takes it from here.
struct Config {
  std::uint64_t default_modulus = 32003;

  // univariate factorization
  std::size_t max_univariate_degree = 64;
  std::size_t max_tower_degree = 64;
  std::size_t rational_factor_degree_cap = 6;

  // truncation kernel
  std::size_t truncation_ceiling = 72;

  // valuation
  std::size_t witness_subset_cap = 5000;
  // above this many r-subsets, order and witnesses come from line specialization
  std::size_t minor_scan_limit = 200;

  // symmetric powers
  std::size_t sym_power_cap = 8;

  // transforms / HD
  std::size_t max_depth = 12;
  std::size_t contracting_pool = 32;

  // multiplicity
  std::size_t reduction_samples = 5;
  std::size_t resample_limit = 20;
  std::uint64_t scalar_range = 1000;
};

const Config& default_config();

}  // namespace icm
