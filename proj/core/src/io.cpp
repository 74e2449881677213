#include "rbminit/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "rbminit/errors.hpp"

namespace rbminit {
namespace {

using nlohmann::json;

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_json_array(const json& j, const char* field, Eigen::Index size) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
    throw FormatError(std::string("field '") + field + "' must be an array of " +
                      std::to_string(size) + " numbers");
  }
  Eigen::VectorXd out(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!j[i].is_number()) {
      throw FormatError(std::string("field '") + field + "' has a non-numeric entry");
    }
    out[i] = j[i].get<double>();
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto start = s.find_first_not_of(" \t\r\n");
  if (start == std::string_view::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(start, end - start + 1));
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) {
    return false;
  }
  std::size_t used = 0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    fields.push_back(trim(field));
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

// Rows of numbers; when allow_header is set, a first row that fails to parse is skipped.
std::vector<std::vector<double>> read_rows(std::istream& is, bool allow_header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool ok = true;
    for (std::size_t k = 0; k < fields.size() && ok; ++k) {
      ok = parse_double(fields[k], row[k]);
    }
    if (!ok) {
      if (allow_header && rows.empty() && line_no == 1) {
        continue;
      }
      throw FormatError("line " + std::to_string(line_no) + ": non-numeric field");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(rows.front().size()) + " fields");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    return {};
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return out;
}

template <typename Stream>
Stream open(const std::filesystem::path& path) {
  Stream s(path);
  if (!s) {
    throw Error("cannot open " + path.string());
  }
  return s;
}

}  // namespace

void write_rbm_json(std::ostream& os, const Rbm& rbm) {
  rbm.validate();
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(rbm.w.size()));
  for (int i = 0; i < rbm.n(); ++i) {
    for (int j = 0; j < rbm.m(); ++j) {
      w.push_back(rbm.w(i, j));
    }
  }
  const json j = {{"n", rbm.n()},
                  {"m", rbm.m()},
                  {"hidden", std::string(to_string(rbm.hidden))},
                  {"b", to_vector(rbm.b)},
                  {"c", to_vector(rbm.c)},
                  {"w", w}};
  os << j.dump(1) << '\n';
}

Rbm read_rbm_json(std::istream& is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid RBM JSON: ") + e.what());
  }
  for (const char* field : {"n", "m", "hidden", "b", "c", "w"}) {
    if (!j.contains(field)) {
      throw FormatError(std::string("RBM JSON is missing '") + field + "'");
    }
  }
  if (!j["n"].is_number_integer() || !j["m"].is_number_integer() || !j["hidden"].is_string()) {
    throw FormatError("RBM JSON: n, m must be integers and hidden a string");
  }
  const int n = j["n"].get<int>();
  const int m = j["m"].get<int>();
  if (n < 1 || m < 1) {
    throw FormatError("RBM JSON: n and m must be positive");
  }
  HiddenSpace hidden = HiddenSpace::Ising;
  try {
    hidden = parse_hidden_space(j["hidden"].get<std::string>());
  } catch (const DomainError& e) {
    throw FormatError(std::string("RBM JSON: ") + e.what());
  }
  Rbm rbm(n, m, hidden);
  rbm.b = from_json_array(j["b"], "b", n);
  rbm.c = from_json_array(j["c"], "c", m);
  const Eigen::VectorXd flat = from_json_array(j["w"], "w", static_cast<Eigen::Index>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      rbm.w(i, k) = flat[static_cast<Eigen::Index>(i) * m + k];
    }
  }
  rbm.validate();
  return rbm;
}

void save_rbm(const std::filesystem::path& path, const Rbm& rbm) {
  auto os = open<std::ofstream>(path);
  write_rbm_json(os, rbm);
}

Rbm load_rbm(const std::filesystem::path& path) {
  auto is = open<std::ifstream>(path);
  return read_rbm_json(is);
}

void write_dataset_csv(std::ostream& os, const Dataset& data) {
  data.validate();
  for (int r = 0; r < data.size(); ++r) {
    for (int i = 0; i < data.n(); ++i) {
      if (i > 0) {
        os << ',';
      }
      os << (data.points(r, i) > 0.0 ? "1" : "-1");
    }
    os << '\n';
  }
}

Dataset read_dataset_csv(std::istream& is, std::string source) {
  Dataset data;
  data.points = to_matrix(read_rows(is, false));
  data.source = std::move(source);
  if (data.size() == 0) {
    throw FormatError("dataset CSV is empty");
  }
  try {
    data.validate();
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  return data;
}

void save_dataset(const std::filesystem::path& path, const Dataset& data) {
  auto os = open<std::ofstream>(path);
  write_dataset_csv(os, data);
}

Dataset load_dataset(const std::filesystem::path& path) {
  auto is = open<std::ifstream>(path);
  return read_dataset_csv(is, path.string());
}

Eigen::MatrixXd read_real_csv(std::istream& is) {
  Eigen::MatrixXd out = to_matrix(read_rows(is, true));
  if (out.size() == 0) {
    throw FormatError("real-valued CSV is empty");
  }
  return out;
}

}  // namespace rbminit
