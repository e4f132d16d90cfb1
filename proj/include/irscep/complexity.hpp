#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace irscep {

struct ComplexityCase {
  int bs_antennas = 50;   // N_T
  int irs_elements = 70;  // M
  int bs_memory = 2;      // T
  int irs_memory = 2;     // B
  int bs_alphabet = 4;    // N_BS
  int irs_alphabet = 4;   // N_IRS
};

struct ComplexityCounts {
  double trellis = 0.0;     // (N_T - T) N_BS^{T+1} + (M - B) N_IRS^{B+1}
  double sdr = 0.0;         // (N_T+1)^3.5 + (M+1)^3.5, unit accuracy log factor
  double exhaustive = 0.0;  // N_BS^{N_T} + N_IRS^{M}
};

ComplexityCounts complexity_counts(const ComplexityCase& c);

/// Formatted table for a list of cases (defaults to the two reference cases
/// with 2- and 3-bit phase alphabets at N_T=50, M=70, T=B=2).
std::string complexity_table(const std::vector<ComplexityCase>& cases);
std::vector<ComplexityCase> default_complexity_cases();

}  // namespace irscep
