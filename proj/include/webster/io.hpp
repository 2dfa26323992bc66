#ifndef WEBSTER_IO_HPP
#define WEBSTER_IO_HPP

#include <iosfwd>
#include <string>

#include "webster/inverse.hpp"
#include "webster/metrics.hpp"
#include "webster/reflectance.hpp"
#include "webster/types.hpp"

namespace webster {

// Impedance CSV: header `frequency_hz,real,imag`, SI units, LF endings.
ImpedanceSpectrum read_impedance_csv(const std::string& path);
void write_impedance_csv(const std::string& path, const ImpedanceSpectrum& z);

// Area CSV: header `x_m,area_m2`.
AreaFunction read_area_csv(const std::string& path);
void write_area_csv(const std::string& path, const AreaFunction& af);

void write_termination_json(const std::string& path, const TerminationReport& rep);
void write_diagnostics_json(const std::string& path, const ReflectanceState& st,
                            const std::string& resolved_config_json);
void write_error_report_json(const std::string& path, const ErrorReport& rep);

// Long-format sweep CSV plus the aggregated L_mlme matrix.
void write_sweep_csv(const std::string& long_path, const std::string& matrix_path,
                     const CalibrationRecord& rec, double f_lim);

std::string format_si(double v);  // shortest round-trip-exact decimal

}  // namespace webster

#endif
