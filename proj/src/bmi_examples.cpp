#include "catreg/bmi_examples.hpp"

#include <cmath>

namespace catreg::examples {

oracle::CellMeanSpec gender_means(std::size_t count) {
  oracle::CellMeanSpec spec;
  spec.response = "bmi";
  spec.factors = {{"female", {"0", "1"}, true}};
  spec.cells = {{{"0"}, 25.23, count}, {{"1"}, 24.72, count}};
  return spec;
}

oracle::CellMeanSpec education_means(std::size_t count) {
  oracle::CellMeanSpec spec;
  spec.response = "bmi";
  spec.factors = {{"edu", {"low", "middle", "high"}, false}};
  spec.cells = {{{"low"}, 26.12, count}, {{"middle"}, 24.94, count}, {{"high"}, 24.29, count}};
  return spec;
}

oracle::CellMeanSpec gender_education_means(std::size_t count) {
  oracle::CellMeanSpec spec;
  spec.response = "bmi";
  spec.factors = {{"female", {"0", "1"}, true}, {"edu", {"low", "middle", "high"}, false}};
  spec.cells = {
      {{"0", "low"}, 26.07, count},    {{"0", "middle"}, 25.25, count},
      {{"0", "high"}, 24.70, count},   {{"1", "low"}, 26.16, count},
      {{"1", "middle"}, 24.69, count}, {{"1", "high"}, 23.87, count},
  };
  return spec;
}

Dataset full_interaction_dataset(std::mt19937_64& rng, std::size_t per_cell) {
  const std::vector<std::string> edu_levels = {"low", "middle", "high"};
  const std::vector<std::string> child_levels = {"none", "1", "2", "3", "4+"};
  const std::vector<std::string> year_levels = {"2000", "2005", "2011"};
  std::uniform_int_distribution<int> year_dist(0, 2);
  std::uniform_real_distribution<double> age_dist(18.0, 70.0);
  std::normal_distribution<double> noise(0.0, 3.0);

  NumericColumn female, age, bmi;
  CategoricalColumn edu{edu_levels, {}}, children{child_levels, {}}, year{year_levels, {}};
  for (int f = 0; f < 2; ++f) {
    for (std::size_t e = 0; e < edu_levels.size(); ++e) {
      for (std::size_t c = 0; c < child_levels.size(); ++c) {
        for (std::size_t r = 0; r < per_cell; ++r) {
          const int y = year_dist(rng);
          const double a = age_dist(rng);
          female.values.push_back(f);
          edu.codes.push_back(static_cast<std::int32_t>(e));
          children.codes.push_back(static_cast<std::int32_t>(c));
          year.codes.push_back(y);
          age.values.push_back(a);
          bmi.values.push_back(23.4 + 0.1 * f - 0.5 * static_cast<double>(e) + 0.8 * (c > 0) +
                               0.2 * y + 1.9 * std::log(a / 18.0) + noise(rng));
        }
      }
    }
  }
  // Every year level must occur for a full-rank design.
  for (std::int32_t y = 0; y < 3; ++y) year.codes[static_cast<std::size_t>(y)] = y;

  return Dataset({"female", "edu", "children", "year", "age", "bmi"},
                 {female, edu, children, year, age, bmi});
}

}  // namespace catreg::examples
