#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aitest/exact.hpp"

namespace aitest {

enum class TableFormat { Csv, Markdown };

struct TableSpec {
  std::vector<double> alphas;
  Sidedness sidedness = Sidedness::OneSidedUpper;
  ReferenceModel ref = ReferenceModel::coin();
  Prior prior;
  CriticalMode mode = CriticalMode::Exact;
  std::vector<InfoUnit> units{InfoUnit::bits(), InfoUnit::nats()};
  TableFormat format = TableFormat::Csv;
  int precision = 4;
  bool raw = false;  // full precision instead of rounding to `precision`
};

/// Critical values for every alpha, one row per alpha and one column per
/// unit, rows in input order. CSV header is `alpha,<unit>,...`; markdown is
/// a pipe table. Values are rounded half-to-even. Throws ValidationError
/// naming the offending row when an alpha lies outside (0,1) (alpha = 0
/// has no finite two-sided critical value).
std::string generate_table(const TableSpec& spec);

/// `supp-table-1`: one-sided coin critical values in bits and nats.
/// `supp-table-2`: two-sided coin critical values in nats and bits,
/// paper-table mode.
std::optional<TableSpec> table_preset(std::string_view name);

/// Half-to-even rounding of the exact binary value to `decimals` places;
/// never renders a negative zero. +inf renders as `inf`.
std::string format_fixed(double value, int decimals);

/// Shortest representation that round-trips.
std::string format_shortest(double value);

}  // namespace aitest
