#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace expsum {

// One machine-readable result row. Values keep insertion order; doubles are
// emitted with 17 significant digits so records round-trip losslessly and
// identical runs produce byte-identical output.
class RunRecord {
 public:
  using Value = std::variant<std::string, double, std::int64_t, std::uint64_t,
                             bool, std::complex<double>>;

  void add(std::string key, Value value);

  std::string json_line() const;

  // Complex values expand to <key>_re,<key>_im columns; strings are quoted.
  std::string csv_header() const;
  std::string csv_row() const;

 private:
  std::vector<std::pair<std::string, Value>> fields_;
};

std::string format_double_17(double v);

}  // namespace expsum
