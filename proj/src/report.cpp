#include "bures/report.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "bures/bures_metric.hpp"
#include "bures/error.hpp"
#include "bures/state_space.hpp"

namespace bures {
namespace {

constexpr std::array<int, 5> kTableColumns = {kFF2, kF2F2, kTrF2, kF3F3, kF4F4};

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string table_csv(const InvariantTable& table) {
  std::string out = "field";
  for (int k : kTableColumns) out += "," + std::string(kInvariantNames[static_cast<std::size_t>(k)]);
  for (int k : kTableColumns) out += ",stderr_" + std::string(kInvariantNames[static_cast<std::size_t>(k)]);
  out += "\n";
  for (std::size_t f = 0; f < table.rows.size(); ++f) {
    out += kFieldNames[f];
    for (int k : kTableColumns) out += "," + format_double(table.rows[f][static_cast<std::size_t>(k)].value);
    for (int k : kTableColumns) {
      out += ",";
      if (table.method == Method::monte_carlo) {
        out += format_double(table.rows[f][static_cast<std::size_t>(k)].std_error);
      }
    }
    out += "\n";
  }
  return out;
}

std::string ab_scan_csv(int grid_n) {
  if (grid_n < 2) throw Error(ErrorCode::invalid_argument, "grid must be >= 2");
  std::string out = "zeta1,zeta2,A,B\n";
  for (int i = 0; i < grid_n; ++i) {
    const double z1 = kZeta1Max * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double z2 = kZeta2Max * j / (grid_n - 1);
      const Spectrum s = spectrum_from_spherical(z1, z2);
      const SubexpressionsAB ab = closed_form_ab(s);
      out += format_double(z1) + "," + format_double(z2) + "," + format_double(ab.a) + "," +
             format_double(ab.b) + "\n";
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
  os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  os.close();
  if (!os) throw Error(ErrorCode::io_error, "failed writing " + path);
}

}  // namespace bures
