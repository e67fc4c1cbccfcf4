#ifndef CATREG_BMI_EXAMPLES_HPP_
#define CATREG_BMI_EXAMPLES_HPP_

// Published BMI group means used as reproduction targets. Each spec can be
// turned into data with oracle::synthesize; the same documents live in
// data/*.json.

#include <cstddef>
#include <random>
#include <string>

#include "catreg/dataset.hpp"
#include "catreg/oracle.hpp"

namespace catreg::examples {

// Males 25.23, females 24.72; `female` is a 0/1 numeric column.
oracle::CellMeanSpec gender_means(std::size_t count = 2);

// Low 26.12, middle 24.94, high 24.29.
oracle::CellMeanSpec education_means(std::size_t count = 4);

// Gender x education: males 26.07 / 25.25 / 24.70, females 26.16 / 24.69 / 23.87.
oracle::CellMeanSpec gender_education_means(std::size_t count = 4);

// Model with gender crossed with education and with number of children,
// plus interview year and age centred at 18 on the log scale.
inline constexpr const char* kFullInteractionFormula =
    "bmi ~ female*edu + female*children + cat(year, ref=\"2000\") + center(log(age), at=log(18))";

// Random data for kFullInteractionFormula: female {0,1} x edu {low, middle,
// high} x children {none, 1, 2, 3, 4+} with `per_cell` rows per cell,
// year in {2000, 2005, 2011}, age uniform on [18, 70].
Dataset full_interaction_dataset(std::mt19937_64& rng, std::size_t per_cell = 6);

}  // namespace catreg::examples

#endif  // CATREG_BMI_EXAMPLES_HPP_
