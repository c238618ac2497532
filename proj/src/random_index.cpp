#include "comporank/random_index.hpp"

#include <cerrno>
#include <cstdlib>
#include <string>

#include "comporank/error.hpp"

namespace comporank {

const RandomIndex& RandomIndex::standard() {
  static const RandomIndex table(
      {0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49});
  return table;
}

RandomIndex::RandomIndex(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::InvalidValue, "random_index", "random index table is empty");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!(values_[k] >= 0.0)) {
      throw Error(ErrorCode::InvalidValue, "random_index[" + std::to_string(k + 1) + "]",
                  "random index entries must be non-negative");
    }
  }
}

RandomIndex RandomIndex::parse(std::string_view csv) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    std::string field(csv.substr(start, end - start));
    char* stop = nullptr;
    errno = 0;
    double v = std::strtod(field.c_str(), &stop);
    if (field.empty() || errno != 0 || stop == field.c_str() || *stop != '\0') {
      throw Error(ErrorCode::InvalidValue, "random_index[" + std::to_string(values.size() + 1) + "]",
                  "cannot parse random index entry '" + field + "'");
    }
    values.push_back(v);
    start = end + 1;
  }
  return RandomIndex(std::move(values));
}

RandomIndex RandomIndex::from_environment() {
  if (const char* env = std::getenv("COMPORANK_RI_TABLE"); env != nullptr && *env != '\0') {
    return parse(env);
  }
  return standard();
}

double RandomIndex::at(std::size_t order) const {
  if (order == 0 || order > values_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "order " + std::to_string(order),
                "no random index for matrices of order " + std::to_string(order) +
                    " (supported up to " + std::to_string(values_.size()) + ")");
  }
  return values_[order - 1];
}

}  // namespace comporank
