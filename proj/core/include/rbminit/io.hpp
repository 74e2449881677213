#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "rbminit/rbm.hpp"

namespace rbminit {

/// {"n", "m", "hidden", "b", "c", "w"} with w flattened row-major.
void write_rbm_json(std::ostream& os, const Rbm& rbm);
Rbm read_rbm_json(std::istream& is);

void save_rbm(const std::filesystem::path& path, const Rbm& rbm);
Rbm load_rbm(const std::filesystem::path& path);

/// Headerless CSV of -1/+1 integers, one row per data point.
void write_dataset_csv(std::ostream& os, const Dataset& data);
Dataset read_dataset_csv(std::istream& is, std::string source = {});

void save_dataset(const std::filesystem::path& path, const Dataset& data);
Dataset load_dataset(const std::filesystem::path& path);

/// Real-valued CSV, rows = samples. A leading non-numeric row is treated as a header.
Eigen::MatrixXd read_real_csv(std::istream& is);

}  // namespace rbminit
