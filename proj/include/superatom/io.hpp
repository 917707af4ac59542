#ifndef SUPERATOM_IO_HPP
#define SUPERATOM_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "superatom/scattering.hpp"
#include "superatom/scenarios.hpp"

namespace superatom {

// Numbers are printed with 17 significant digits so parsing them back
// reproduces the exact doubles.
std::string format_double(double value);

// CSV columns: omega_p_ghz, re_t, im_t, abs_t, re_r, im_r, abs_r,
// t2_plus_r2. Metadata rides in leading '#' comment lines and is omitted
// entirely under no_meta (data rows are deterministic either way).
void write_spectrum_csv(std::ostream& out, const std::vector<ScatteringPoint>& points,
                        const nlohmann::json& meta, bool no_meta);
nlohmann::json spectrum_json(const std::vector<ScatteringPoint>& points,
                             const nlohmann::json& meta, bool no_meta);

// Long-form sweep CSV: control, omega_p_ghz, abs_t, abs_r.
void write_sweep_csv(std::ostream& out, const SweepResult& result, bool no_meta);
nlohmann::json sweep_json(const SweepResult& result, bool no_meta);

// Per-control-value analysis: FWHM and flat-bottom width of |t|^2,
// transparency windows of |t|, the FWHM-vs-control linear fit when it
// exists, and the mode track when the scenario produced one.
nlohmann::json analysis_sidecar(const SweepResult& result);

// Reads back what write_spectrum_csv wrote (comment lines are skipped).
std::vector<ScatteringPoint> read_spectrum_csv(std::istream& in);

nlohmann::json run_metadata(const std::string& command, const nlohmann::json& config_echo);

} // namespace superatom

#endif
