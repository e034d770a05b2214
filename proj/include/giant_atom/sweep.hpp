#pragma once

// Run specifications, sweeps and serialisation behind the ga-scatter tool.

#include "giant_atom/continuum_scatter.hpp"
#include "giant_atom/core_model.hpp"
#include "giant_atom/discrete_scatter.hpp"
#include "giant_atom/spectrum_kernels.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace giant_atom {

/// Invalid run specification; line is 0 when the problem is not tied to a line.
class SpecError : public std::invalid_argument {
public:
    SpecError(int line, std::string field, const std::string& message);
    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

enum class Mode { Spectrum, Map2d, Markov, Features, Validate };
enum class ModelKind { Discrete, Regular, Distribution, Tabulated };
enum class Formula { Exact, Markov };
enum class OutputFormat { Csv, Json };
enum class SecondaryParam { Theta, ThetaBig, Phi0 };

std::string to_string(Mode m);
std::string to_string(ModelKind m);
std::string to_string(Formula f);
std::string to_string(OutputFormat f);
std::string to_string(SecondaryParam p);

struct GridSpec {
    double lo = -1.0;
    double hi = 1.0;
    int count = 201;
    bool operator==(const GridSpec&) const = default;
};

struct SecondaryAxis {
    SecondaryParam param = SecondaryParam::Theta;
    GridSpec grid;
    bool operator==(const SecondaryAxis&) const = default;
};

struct RunSpec {
    Mode mode = Mode::Spectrum;
    ModelKind model = ModelKind::Regular;
    double omega_a = 1000.0;

    // regular
    int n_points = 2;
    double gamma = 1.0;
    double theta = 0.0;
    // discrete
    std::vector<CouplingPoint> points;
    // distribution / tabulated
    DistributionKind distribution = DistributionKind::Uniform;
    double gamma_tilde = 1.0;
    double theta_big = 1.0;
    double phi_0 = 0.0;
    std::string table;

    Formula formula = Formula::Exact;
    GridSpec grid;
    std::optional<SecondaryAxis> axis2;
    OutputFormat format = OutputFormat::Csv;
    std::string out;
    bool oracle = false;

    // validate
    unsigned long long seed = 20240601ULL;
    int samples = 2000;
    std::vector<int> m_schedule{8, 16, 32, 64, 128};

    bool operator==(const RunSpec& other) const;
};

bool operator==(const CouplingPoint& a, const CouplingPoint& b);

/// key = value lines, '#' comments. Numbers may carry a trailing 'pi'
/// factor (600pi). Unknown keys and malformed values raise SpecError.
RunSpec parse_run_spec(std::istream& in);
RunSpec parse_run_spec_string(const std::string& text);
RunSpec load_run_spec(const std::string& path);
/// Canonical text form; parse_run_spec(serialize_run_spec(s)) == s.
std::string serialize_run_spec(const RunSpec& spec);
/// Cross-field checks (grid counts and ordering, k > 0, model parameters, files).
void validate_run_spec(const RunSpec& spec);

/// 17 significant digits, '.' separator, independent of locale.
std::string format_number(double x);

std::vector<double> grid_points(const GridSpec& g);

struct SpectrumResult {
    SpectrumTable table;
    std::string unit;  ///< "gamma" or "gamma_tilde"
    std::vector<SpectrumRow> oracle_rows;
    std::optional<double> oracle_max_deviation;
};

SpectrumResult run_spectrum(const RunSpec& spec, Execution ex = Execution::Parallel);

struct MarkovResult {
    MarkovCharacterization markov;
    SpectrumResult spectrum;
};

MarkovResult run_markov(const RunSpec& spec, Execution ex = Execution::Parallel);

struct MapResult {
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<double> R;  ///< row-major, axis1 outer
    std::string unit;
    std::string formula;
};

MapResult run_map2d(const RunSpec& spec, Execution ex = Execution::Parallel);

class UnsupportedModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

FeatureReport run_features(const RunSpec& spec);

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const noexcept;
};

ValidationReport run_validate(const RunSpec& spec);

// Serialisation. All writers are deterministic.
void write_spectrum_csv(std::ostream& os, const RunSpec& spec, const SpectrumResult& res);
void write_spectrum_json(std::ostream& os, const RunSpec& spec, const SpectrumResult& res);
void write_markov_csv(std::ostream& os, const RunSpec& spec, const MarkovResult& res);
void write_markov_json(std::ostream& os, const RunSpec& spec, const MarkovResult& res);
void write_map_csv(std::ostream& os, const RunSpec& spec, const MapResult& res);
void write_map_json(std::ostream& os, const RunSpec& spec, const MapResult& res);
void write_features_json(std::ostream& os, const RunSpec& spec, const FeatureReport& rep);
void write_validation(std::ostream& os, const RunSpec& spec, const ValidationReport& rep);

/// gnuplot script plotting the data file written for spec.
std::string plot_script(const RunSpec& spec, const std::string& data_path);

}  // namespace giant_atom
