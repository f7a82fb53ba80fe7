#include "aitest/tables.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "aitest/errors.hpp"

namespace aitest {

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 512> buf{};
  // std::to_chars rounds the exact binary value; exact ties go to even.
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw std::runtime_error("format_fixed: buffer too small");
  std::string s(buf.data(), ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_shortest(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_shortest: buffer too small");
  return std::string(buf.data(), ptr);
}

std::string generate_table(const TableSpec& spec) {
  if (spec.alphas.empty()) throw ValidationError("table needs at least one alpha");
  if (spec.units.empty()) throw ValidationError("table needs at least one unit");
  for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
    const double a = spec.alphas[i];
    if (!(a > 0.0 && a < 1.0)) {
      std::string why = "row " + std::to_string(i + 1) + " (alpha=" + format_shortest(a) + "): alpha must lie in (0,1)";
      if (a == 0.0) why += "; alpha = 0 has no finite critical value";
      throw ValidationError(why);
    }
  }

  auto cell = [&](double v) { return spec.raw ? format_shortest(v) : format_fixed(v, spec.precision); };

  std::ostringstream out;
  const bool csv = spec.format == TableFormat::Csv;
  if (csv) {
    out << "alpha";
    for (const auto& u : spec.units) out << ',' << u.name();
    out << '\n';
  } else {
    out << "| alpha |";
    for (const auto& u : spec.units) out << ' ' << u.name() << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < spec.units.size(); ++i) out << "---|";
    out << '\n';
  }

  for (double alpha : spec.alphas) {
    const InfoValue crit = spec.sidedness == Sidedness::OneSidedUpper
                               ? critical_one_sided(alpha, spec.ref, spec.prior, InfoUnit::nats())
                               : critical_two_sided(alpha, spec.ref, spec.prior, spec.mode);
    if (csv) {
      out << format_shortest(alpha);
      for (const auto& u : spec.units) out << ',' << cell(convert(crit, u).value);
    } else {
      out << "| " << format_shortest(alpha) << " |";
      for (const auto& u : spec.units) out << ' ' << cell(convert(crit, u).value) << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::optional<TableSpec> table_preset(std::string_view name) {
  TableSpec spec;
  if (name == "supp-table-1") {
    spec.alphas = {0.5, 0.49, 0.45, 0.4, 0.1, 0.05, 0.01, 0.001};
    spec.sidedness = Sidedness::OneSidedUpper;
    spec.units = {InfoUnit::bits(), InfoUnit::nats()};
    return spec;
  }
  if (name == "supp-table-2") {
    spec.alphas = {0.5, 0.49, 0.45, 0.4, 0.25, 0.1, 0.05, 0.01, 0.001};
    spec.sidedness = Sidedness::TwoSided;
    spec.mode = CriticalMode::PaperTable;
    spec.units = {InfoUnit::nats(), InfoUnit::bits()};
    return spec;
  }
  return std::nullopt;
}

}  // namespace aitest
