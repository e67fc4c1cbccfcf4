#ifndef CATREG_ORACLE_HPP_
#define CATREG_ORACLE_HPP_

// Brute-force references used to check the estimation path: datasets with
// prescribed cell means, direct per-cell averages, and a t-distribution CDF
// by numerical integration (no shared code with the incomplete beta).

#include <cstddef>
#include <istream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "catreg/dataset.hpp"

namespace catreg::oracle {

struct CellFactor {
  std::string name;
  std::vector<std::string> levels;
  bool numeric = false;  // emit as a numeric column (levels must parse as reals)
};

struct Cell {
  std::vector<std::string> levels;  // one per factor, in factor order
  double mean = 0.0;
  std::size_t count = 2;
};

struct CellMeanSpec {
  std::string response = "y";
  std::vector<CellFactor> factors;
  std::vector<Cell> cells;

  // Throws InvalidArgument: empty factor list, duplicate levels or cells,
  // level not declared, count < 2.
  void validate() const;
};

// {"response": "bmi",
//  "factors": [{"name": "female", "levels": ["0", "1"], "numeric": true}, ...],
//  "cells": [{"levels": ["0", "low"], "mean": 26.07, "count": 4}, ...]}
CellMeanSpec read_cell_mean_spec(std::istream& in);
CellMeanSpec read_cell_mean_spec_file(const std::string& path);

// Rows for each cell in spec order: pairs (mean - spread, mean + spread),
// plus one row at the mean for odd counts.
Dataset synthesize(const CellMeanSpec& spec, double spread = 1.0);

using CellKey = std::vector<std::string>;

// Arithmetic mean of `response` in every observed cell of `factors`.
// Numeric factor values are keyed by their shortest spelling; rows with a
// missing value in any involved column are skipped.
std::map<CellKey, double> cell_means(const Dataset& data, const std::vector<std::string>& factors,
                                     const std::string& response);

// Random full-factorial data: factors "f0", "f1", ... with levels "L0",
// "L1", ..., each cell holding a uniform random count in [min_count,
// max_count] of normal responses "y" around a random cell mean.
Dataset random_factorial(std::mt19937_64& rng, const std::vector<std::size_t>& levels_per_factor,
                         std::size_t min_count, std::size_t max_count);

// Student t CDF by adaptive Gauss-Kronrod integration of the density.
double t_cdf_quadrature(double t, double df);

}  // namespace catreg::oracle

#endif  // CATREG_ORACLE_HPP_
