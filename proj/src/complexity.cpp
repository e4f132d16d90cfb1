#include "irscep/complexity.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace irscep {

ComplexityCounts complexity_counts(const ComplexityCase& c) {
  if (c.bs_antennas < 1 || c.irs_elements < 0 || c.bs_memory < 1 || c.irs_memory < 1 ||
      c.bs_alphabet < 2 || c.irs_alphabet < 2 || c.bs_memory > c.bs_antennas ||
      (c.irs_elements > 0 && c.irs_memory > c.irs_elements))
    throw std::invalid_argument("complexity_counts: invalid dimensions");

  ComplexityCounts out;
  out.trellis = static_cast<double>(c.bs_antennas - c.bs_memory) *
                std::pow(static_cast<double>(c.bs_alphabet), c.bs_memory + 1);
  if (c.irs_elements > 0)
    out.trellis += static_cast<double>(c.irs_elements - c.irs_memory) *
                   std::pow(static_cast<double>(c.irs_alphabet), c.irs_memory + 1);
  out.sdr = std::pow(c.bs_antennas + 1.0, 3.5) + std::pow(c.irs_elements + 1.0, 3.5);
  out.exhaustive = std::pow(static_cast<double>(c.bs_alphabet), c.bs_antennas) +
                   std::pow(static_cast<double>(c.irs_alphabet), c.irs_elements);
  return out;
}

std::vector<ComplexityCase> default_complexity_cases() {
  ComplexityCase two_bit;
  ComplexityCase three_bit;
  three_bit.bs_alphabet = 8;
  three_bit.irs_alphabet = 8;
  return {two_bit, three_bit};
}

std::string complexity_table(const std::vector<ComplexityCase>& cases) {
  std::string out =
      "case  N_T   M  T  B  N_BS  N_IRS  trellis       sdr           exhaustive\n";
  char buf[256];
  int id = 1;
  for (const ComplexityCase& c : cases) {
    const ComplexityCounts n = complexity_counts(c);
    std::snprintf(buf, sizeof(buf), "%-4d  %-4d %-3d %-2d %-2d %-5d %-6d %-13.0f %-13.6g %-.6g\n",
                  id++, c.bs_antennas, c.irs_elements, c.bs_memory, c.irs_memory,
                  c.bs_alphabet, c.irs_alphabet, n.trellis, n.sdr, n.exhaustive);
    out += buf;
  }
  return out;
}

}  // namespace irscep
