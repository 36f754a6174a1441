#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "phasescat/farfield.hpp"
#include "phasescat/indicators.hpp"

namespace phasescat {

/// Malformed file contents or a failed read/write.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyFarField = std::variant<FarFieldMatrix, PhaselessMatrix>;

/// Text far-field format:
///   #pfft v1
///   #kind=complex|modulus
///   #k=<k>
///   #N=<N>
///   #model=<tag>
///   #tau=<re>,<im>   (optional)
///   #z0=<x>,<y>      (optional)
/// followed by N lines of N comma-separated fields, row j = observation index.
/// Complex fields are written as <re>;<im>. Numbers carry 17 significant digits.
std::string format_far_field(const FarFieldMatrix& m);
std::string format_far_field(const PhaselessMatrix& m);
AnyFarField parse_far_field(std::string_view text);

void write_far_field(const FarFieldMatrix& m, const std::filesystem::path& path);
void write_far_field(const PhaselessMatrix& m, const std::filesystem::path& path);
AnyFarField read_far_field(const std::filesystem::path& path);
/// As read_far_field, rejecting files of the other kind.
FarFieldMatrix read_complex_far_field(const std::filesystem::path& path);
PhaselessMatrix read_phaseless_far_field(const std::filesystem::path& path);

enum class GridFormat { csv, pgm };

GridFormat parse_grid_format(std::string_view name);

/// csv: header "x,y,value", then one node per line with y outer and x inner.
/// pgm: plain P2, maxval 65535, top image row = largest y; min maps to 0, max to 65535,
/// and a constant field maps to 0.
std::string format_grid(const GridField& g, GridFormat format);
void write_grid(const GridField& g, const std::filesystem::path& path, GridFormat format);

}  // namespace phasescat
