#include "giant_atom/sweep.hpp"

#include "giant_atom/oracle_verify.hpp"
#include "giant_atom/roots.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace giant_atom {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

struct FieldError {
    std::string message;
};

double parse_number(const std::string& raw)
{
    std::string s = trim(raw);
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        s = trim(s.substr(0, s.size() - 2));
        if (s.empty() || s == "+")
            return factor;
        if (s == "-")
            return -factor;
        if (s.back() == '*')
            s = trim(s.substr(0, s.size() - 1));
    }
    if (s.empty())
        throw FieldError{"expected a number"};
    const char* first = s.data();
    if (*first == '+')
        ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw FieldError{"expected a number, got '" + raw + "'"};
    if (!std::isfinite(v))
        throw FieldError{"number must be finite"};
    return v * factor;
}

template <class Int>
Int parse_integer(const std::string& raw)
{
    const std::string s = trim(raw);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw FieldError{"expected an integer, got '" + raw + "'"};
    return v;
}

bool parse_bool(const std::string& s)
{
    if (s == "true" || s == "1" || s == "yes" || s == "on")
        return true;
    if (s == "false" || s == "0" || s == "no" || s == "off")
        return false;
    throw FieldError{"expected true or false, got '" + s + "'"};
}

GridSpec parse_grid(const std::string& s)
{
    const auto parts = split(s, ':');
    if (parts.size() != 3)
        throw FieldError{"expected lo:hi:count"};
    return {parse_number(parts[0]), parse_number(parts[1]), parse_integer<int>(parts[2])};
}

template <class E>
E parse_enum(const std::string& s, std::initializer_list<E> values)
{
    for (E v : values)
        if (to_string(v) == s)
            return v;
    std::string allowed;
    for (E v : values)
        allowed += (allowed.empty() ? "" : ", ") + to_string(v);
    throw FieldError{"unknown value '" + s + "' (allowed: " + allowed + ")"};
}

std::string format_grid(const GridSpec& g)
{
    return format_number(g.lo) + ":" + format_number(g.hi) + ":" + std::to_string(g.count);
}

void check_grid(const GridSpec& g, const std::string& field)
{
    if (g.count < 2)
        throw SpecError(0, field, "grid count must be at least 2");
    if (!(g.lo < g.hi))
        throw SpecError(0, field, "grid needs lo < hi");
}

}  // namespace

SpecError::SpecError(int line, std::string field, const std::string& message)
    : std::invalid_argument((line > 0 ? "line " + std::to_string(line) + ", " : std::string())
                            + (field.empty() ? std::string() : "field '" + field + "': ") + message),
      line_(line), field_(std::move(field))
{
}

std::string to_string(Mode m)
{
    switch (m) {
    case Mode::Spectrum: return "spectrum";
    case Mode::Map2d: return "map2d";
    case Mode::Markov: return "markov";
    case Mode::Features: return "features";
    case Mode::Validate: return "validate";
    }
    return "?";
}

std::string to_string(ModelKind m)
{
    switch (m) {
    case ModelKind::Discrete: return "discrete";
    case ModelKind::Regular: return "regular";
    case ModelKind::Distribution: return "distribution";
    case ModelKind::Tabulated: return "tabulated";
    }
    return "?";
}

std::string to_string(Formula f) { return f == Formula::Exact ? "exact" : "markov"; }
std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

std::string to_string(SecondaryParam p)
{
    switch (p) {
    case SecondaryParam::Theta: return "theta";
    case SecondaryParam::ThetaBig: return "theta_big";
    case SecondaryParam::Phi0: return "phi_0";
    }
    return "?";
}

bool operator==(const CouplingPoint& a, const CouplingPoint& b) { return a.phi == b.phi && a.gamma == b.gamma; }

bool RunSpec::operator==(const RunSpec& o) const
{
    return mode == o.mode && model == o.model && omega_a == o.omega_a && n_points == o.n_points
           && gamma == o.gamma && theta == o.theta && points == o.points && distribution == o.distribution
           && gamma_tilde == o.gamma_tilde && theta_big == o.theta_big && phi_0 == o.phi_0 && table == o.table
           && formula == o.formula && grid == o.grid && axis2 == o.axis2 && format == o.format && out == o.out
           && oracle == o.oracle && seed == o.seed && samples == o.samples && m_schedule == o.m_schedule;
}

std::string format_number(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

RunSpec parse_run_spec(std::istream& in)
{
    RunSpec spec;
    std::map<std::string, int> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw SpecError(lineno, "", "expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
            throw SpecError(lineno, key, "duplicate key (first on line " + std::to_string(it->second) + ")");
        try {
            if (key == "mode")
                spec.mode = parse_enum(value, {Mode::Spectrum, Mode::Map2d, Mode::Markov, Mode::Features,
                                               Mode::Validate});
            else if (key == "model")
                spec.model = parse_enum(value, {ModelKind::Discrete, ModelKind::Regular, ModelKind::Distribution,
                                                ModelKind::Tabulated});
            else if (key == "omega_a")
                spec.omega_a = parse_number(value);
            else if (key == "n_points")
                spec.n_points = parse_integer<int>(value);
            else if (key == "gamma")
                spec.gamma = parse_number(value);
            else if (key == "theta")
                spec.theta = parse_number(value);
            else if (key == "points") {
                spec.points.clear();
                if (!value.empty())
                    for (const auto& item : split(value, ',')) {
                        const auto pg = split(item, ':');
                        if (pg.size() != 2)
                            throw FieldError{"expected phi:gamma pairs separated by commas"};
                        spec.points.push_back({parse_number(pg[0]), parse_number(pg[1])});
                    }
            } else if (key == "distribution") {
                try {
                    spec.distribution = distribution_kind_from_string(value);
                } catch (const std::exception& e) {
                    throw FieldError{e.what()};
                }
            } else if (key == "gamma_tilde")
                spec.gamma_tilde = parse_number(value);
            else if (key == "theta_big")
                spec.theta_big = parse_number(value);
            else if (key == "phi_0")
                spec.phi_0 = parse_number(value);
            else if (key == "table")
                spec.table = value;
            else if (key == "formula")
                spec.formula = parse_enum(value, {Formula::Exact, Formula::Markov});
            else if (key == "grid")
                spec.grid = parse_grid(value);
            else if (key == "axis2") {
                const auto c = value.find(':');
                if (c == std::string::npos)
                    throw FieldError{"expected param:lo:hi:count"};
                spec.axis2 = SecondaryAxis{
                    parse_enum(trim(value.substr(0, c)),
                               {SecondaryParam::Theta, SecondaryParam::ThetaBig, SecondaryParam::Phi0}),
                    parse_grid(value.substr(c + 1))};
            } else if (key == "format")
                spec.format = parse_enum(value, {OutputFormat::Csv, OutputFormat::Json});
            else if (key == "out")
                spec.out = value;
            else if (key == "oracle")
                spec.oracle = parse_bool(value);
            else if (key == "seed")
                spec.seed = parse_integer<unsigned long long>(value);
            else if (key == "samples")
                spec.samples = parse_integer<int>(value);
            else if (key == "m_schedule") {
                spec.m_schedule.clear();
                for (const auto& item : split(value, ','))
                    spec.m_schedule.push_back(parse_integer<int>(item));
            } else
                throw SpecError(lineno, key, "unknown key");
        } catch (const FieldError& e) {
            throw SpecError(lineno, key, e.message);
        }
    }
    return spec;
}

RunSpec parse_run_spec_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_run_spec(in);
}

RunSpec load_run_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SpecError(0, "config", "cannot open '" + path + "'");
    return parse_run_spec(in);
}

std::string serialize_run_spec(const RunSpec& s)
{
    std::ostringstream os;
    os << "mode = " << to_string(s.mode) << '\n';
    os << "model = " << to_string(s.model) << '\n';
    os << "omega_a = " << format_number(s.omega_a) << '\n';
    os << "n_points = " << s.n_points << '\n';
    os << "gamma = " << format_number(s.gamma) << '\n';
    os << "theta = " << format_number(s.theta) << '\n';
    os << "points =";
    for (std::size_t k = 0; k < s.points.size(); ++k)
        os << (k ? ", " : " ") << format_number(s.points[k].phi) << ':' << format_number(s.points[k].gamma);
    os << '\n';
    os << "distribution = " << to_string(s.distribution) << '\n';
    os << "gamma_tilde = " << format_number(s.gamma_tilde) << '\n';
    os << "theta_big = " << format_number(s.theta_big) << '\n';
    os << "phi_0 = " << format_number(s.phi_0) << '\n';
    os << "table = " << s.table << '\n';
    os << "formula = " << to_string(s.formula) << '\n';
    os << "grid = " << format_grid(s.grid) << '\n';
    if (s.axis2)
        os << "axis2 = " << to_string(s.axis2->param) << ':' << format_grid(s.axis2->grid) << '\n';
    os << "format = " << to_string(s.format) << '\n';
    os << "out = " << s.out << '\n';
    os << "oracle = " << (s.oracle ? "true" : "false") << '\n';
    os << "seed = " << s.seed << '\n';
    os << "samples = " << s.samples << '\n';
    os << "m_schedule =";
    for (std::size_t k = 0; k < s.m_schedule.size(); ++k)
        os << (k ? "," : " ") << s.m_schedule[k];
    os << '\n';
    return os.str();
}

void validate_run_spec(const RunSpec& s)
{
    if (!(s.omega_a > 0.0))
        throw SpecError(0, "omega_a", "must be positive");
    check_grid(s.grid, "grid");
    if (s.grid.lo <= -s.omega_a)
        throw SpecError(0, "grid", "detunings must stay above -omega_a (k > 0)");
    switch (s.model) {
    case ModelKind::Regular:
        if (s.n_points < 1)
            throw SpecError(0, "n_points", "must be at least 1");
        if (!(s.gamma > 0.0))
            throw SpecError(0, "gamma", "must be positive");
        break;
    case ModelKind::Discrete:
        if (s.points.empty())
            throw SpecError(0, "points", "at least one coupling point is required");
        for (const auto& p : s.points)
            if (!(p.gamma >= 0.0))
                throw SpecError(0, "points", "decay rates must be non-negative");
        break;
    case ModelKind::Distribution:
        if (!(s.gamma_tilde > 0.0))
            throw SpecError(0, "gamma_tilde", "must be positive");
        if (!(s.theta_big > 0.0))
            throw SpecError(0, "theta_big", "must be positive");
        if (s.distribution == DistributionKind::Tabulated)
            throw SpecError(0, "distribution", "use model = tabulated for tabulated densities");
        if (!(s.phi_0 >= 0.0))
            throw SpecError(0, "phi_0", "must be non-negative");
        break;
    case ModelKind::Tabulated:
        if (!(s.gamma_tilde > 0.0))
            throw SpecError(0, "gamma_tilde", "must be positive");
        if (s.table.empty() || !std::filesystem::is_regular_file(s.table))
            throw SpecError(0, "table", "file '" + s.table + "' does not exist");
        break;
    }
    if (s.mode == Mode::Map2d) {
        if (!s.axis2)
            throw SpecError(0, "axis2", "map2d needs a secondary axis");
        check_grid(s.axis2->grid, "axis2");
        const auto p = s.axis2->param;
        const bool ok = (p == SecondaryParam::Theta && s.model == ModelKind::Regular)
                        || (p == SecondaryParam::ThetaBig && s.model == ModelKind::Distribution)
                        || (p == SecondaryParam::Phi0 && s.model == ModelKind::Distribution
                            && s.distribution == DistributionKind::DoubleExponential);
        if (!ok)
            throw SpecError(0, "axis2", "parameter '" + to_string(p) + "' does not apply to this model");
        if (p == SecondaryParam::ThetaBig && !(s.axis2->grid.lo > 0.0))
            throw SpecError(0, "axis2", "theta_big must stay positive");
        if (p == SecondaryParam::Phi0 && !(s.axis2->grid.lo >= 0.0))
            throw SpecError(0, "axis2", "phi_0 must stay non-negative");
    }
    if (s.mode == Mode::Validate) {
        if (s.samples < 1)
            throw SpecError(0, "samples", "must be positive");
        if (s.m_schedule.size() < 2)
            throw SpecError(0, "m_schedule", "needs at least two entries");
        for (std::size_t k = 0; k < s.m_schedule.size(); ++k)
            if (s.m_schedule[k] < 2 || (k && s.m_schedule[k] <= s.m_schedule[k - 1]))
                throw SpecError(0, "m_schedule", "must be strictly increasing and >= 2");
    }
}

std::vector<double> grid_points(const GridSpec& g) { return linear_grid(g.lo, g.hi, std::size_t(g.count)); }

namespace {

bool continuum(const RunSpec& s) { return s.model == ModelKind::Distribution || s.model == ModelKind::Tabulated; }

std::string unit_of(const RunSpec& s) { return continuum(s) ? "gamma_tilde" : "gamma"; }

CouplingDistribution make_distribution(const RunSpec& s, std::vector<std::string>* warnings = nullptr)
{
    if (s.model == ModelKind::Tabulated) {
        auto loaded = load_tabulated_file(s.table, s.gamma_tilde);
        if (warnings)
            warnings->insert(warnings->end(), loaded.warnings.begin(), loaded.warnings.end());
        return loaded.dist;
    }
    return CouplingDistribution::named(s.distribution, s.gamma_tilde, s.theta_big, s.phi_0);
}

MarkovCharacterization characterize(const RunSpec& s, const SystemParams& params)
{
    switch (s.model) {
    case ModelKind::Regular: {
        const RegularArray arr(s.n_points, s.gamma, s.theta);
        auto m = markov_characterize_regular(arr);
        m.regime = classify_regime(params, expand_regular(arr));
        return m;
    }
    case ModelKind::Discrete:
        return markov_characterize(DiscreteCoupling(s.points), params);
    case ModelKind::Distribution:
    case ModelKind::Tabulated: {
        const auto dist = make_distribution(s);
        auto m = dist.is_named() ? markov_characterize_closed(dist) : markov_characterize_quadrature(dist);
        m.regime = classify_regime(params, dist);
        return m;
    }
    }
    return {};
}

std::vector<std::pair<std::string, std::string>> spec_echo(const RunSpec& s)
{
    std::vector<std::pair<std::string, std::string>> meta;
    std::istringstream is(serialize_run_spec(s));
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        const std::string k = trim(line.substr(0, eq));
        if (k == "out" || k == "format")
            continue;
        meta.emplace_back(k, trim(line.substr(eq + 1)));
    }
    return meta;
}

}  // namespace

SpectrumResult run_spectrum(const RunSpec& spec, Execution ex)
{
    validate_run_spec(spec);
    const SystemParams params(spec.omega_a);
    const auto grid = grid_points(spec.grid);
    SpectrumResult res;
    res.unit = unit_of(spec);
    res.table.meta = spec_echo(spec);
    std::vector<std::string> warnings;

    if (spec.formula == Formula::Markov) {
        const auto m = characterize(spec, params);
        res.table.formula = "markov_lorentzian";
        res.table.rows = evaluate_spectrum([&](double d) { return scatter_markov(m, {d}); }, grid, ex);
    } else {
        switch (spec.model) {
        case ModelKind::Regular: {
            const RegularArray arr(spec.n_points, spec.gamma, spec.theta);
            res.table.formula = "regular_closed_form";
            res.table.rows = evaluate_spectrum([&](double d) { return scatter_regular(params, arr, {d}); }, grid, ex);
            break;
        }
        case ModelKind::Discrete: {
            const DiscreteCoupling c(spec.points);
            res.table.formula = "discrete_exact";
            res.table.rows = evaluate_spectrum([&](double d) { return scatter_general(params, c, {d}); }, grid, ex);
            break;
        }
        case ModelKind::Distribution:
        case ModelKind::Tabulated: {
            const auto dist = make_distribution(spec, &warnings);
            if (dist.is_named()) {
                res.table.formula = "continuum_closed_form";
                res.table.rows = evaluate_spectrum(
                    [&](double d) { return scatter_continuum_closed(params, dist, {d}); }, grid, ex);
            } else {
                res.table.formula = "continuum_quadrature";
                res.table.rows =
                    evaluate_spectrum([&](double d) { return scatter_continuum(params, dist, {d}); }, grid, ex);
            }
            break;
        }
        }
    }

    if (spec.oracle) {
        auto from_solution = [](const ScatterSolution& s) { return Scattering{std::norm(s.t), std::norm(s.r)}; };
        if (continuum(spec)) {
            const auto dist = make_distribution(spec);
            res.oracle_rows = evaluate_spectrum(
                [&](double d) { return from_solution(amplitude_phase_continuum(params, dist, {d})); }, grid, ex);
            res.table.meta.emplace_back("oracle_formula", "continuum_amplitudes_quadrature");
        } else {
            const DiscreteCoupling c = spec.model == ModelKind::Regular
                                           ? expand_regular(RegularArray(spec.n_points, spec.gamma, spec.theta))
                                           : DiscreteCoupling(spec.points);
            res.oracle_rows = evaluate_spectrum(
                [&](double d) { return from_solution(solve_matching(params, c, {d})); }, grid, ex);
            res.table.meta.emplace_back("oracle_formula", "matching_linear_solve");
        }
        double dev = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
            dev = std::max({dev, std::abs(res.oracle_rows[k].T - res.table.rows[k].T),
                            std::abs(res.oracle_rows[k].R - res.table.rows[k].R)});
        res.oracle_max_deviation = dev;
    }
    for (const auto& w : warnings)
        res.table.meta.emplace_back("warning", w);
    return res;
}

MarkovResult run_markov(const RunSpec& spec, Execution ex)
{
    RunSpec s = spec;
    s.formula = Formula::Markov;
    validate_run_spec(s);
    MarkovResult res;
    res.markov = characterize(s, SystemParams(s.omega_a));
    res.spectrum = run_spectrum(s, ex);
    return res;
}

MapResult run_map2d(const RunSpec& spec, Execution ex)
{
    validate_run_spec(spec);
    const SystemParams params(spec.omega_a);
    MapResult res;
    res.axis1 = grid_points(spec.grid);
    res.axis2 = grid_points(spec.axis2->grid);
    res.unit = unit_of(spec);
    const bool markov = spec.formula == Formula::Markov;
    res.formula = markov ? "markov_lorentzian"
                         : (spec.model == ModelKind::Regular ? "regular_closed_form" : "continuum_closed_form");
    const auto param = spec.axis2->param;

    if (param == SecondaryParam::Theta) {
        res.R = evaluate_map(
            [&](double d, double theta) {
                const RegularArray arr(spec.n_points, spec.gamma, theta);
                return markov ? scatter_markov(markov_characterize_regular(arr), {d}).R
                              : scatter_regular(params, arr, {d}).R;
            },
            res.axis1, res.axis2, ex);
    } else {
        res.R = evaluate_map(
            [&](double d, double a2) {
                const auto dist = param == SecondaryParam::ThetaBig
                                      ? CouplingDistribution::named(spec.distribution, spec.gamma_tilde, a2, spec.phi_0)
                                      : CouplingDistribution::named(spec.distribution, spec.gamma_tilde,
                                                                    spec.theta_big, a2);
                return markov ? scatter_markov(markov_characterize_closed(dist), {d}).R
                              : scatter_continuum_closed(params, dist, {d}).R;
            },
            res.axis1, res.axis2, ex);
    }
    return res;
}

FeatureReport run_features(const RunSpec& spec)
{
    validate_run_spec(spec);
    const SystemParams params(spec.omega_a);
    FeatureOptions opts;
    opts.grid_points = std::size_t(spec.grid.count);
    const DetuningWindow window{spec.grid.lo, spec.grid.hi};
    if (spec.model == ModelKind::Regular)
        return feature_report(params, RegularArray(spec.n_points, spec.gamma, spec.theta), window, opts);
    if (spec.model == ModelKind::Distribution && spec.distribution == DistributionKind::DoubleExponential)
        return feature_report_double_exp(params, make_distribution(spec), window, opts);
    throw UnsupportedModelError("features need a regular array or a double-exponential distribution");
}

bool ValidationReport::passed() const noexcept
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

// ---- writers ---------------------------------------------------------------

namespace {

void write_header(std::ostream& os, const std::string& what, const std::string& formula, const std::string& unit,
                  const std::vector<std::pair<std::string, std::string>>& meta)
{
    os << "# ga-scatter " << what << '\n';
    os << "# formula = " << formula << '\n';
    os << "# unit = " << unit << '\n';
    for (const auto& [k, v] : meta)
        os << "# " << k << " = " << v << '\n';
}

void write_rows_csv(std::ostream& os, const SpectrumResult& res)
{
    os << "delta_over_" << res.unit << ",T,R";
    if (!res.oracle_rows.empty())
        os << ",T_oracle,R_oracle";
    os << '\n';
    for (std::size_t k = 0; k < res.table.rows.size(); ++k) {
        const auto& r = res.table.rows[k];
        os << format_number(r.delta_k) << ',' << format_number(r.T) << ',' << format_number(r.R);
        if (!res.oracle_rows.empty())
            os << ',' << format_number(res.oracle_rows[k].T) << ',' << format_number(res.oracle_rows[k].R);
        os << '\n';
    }
}

nlohmann::ordered_json meta_json(const std::vector<std::pair<std::string, std::string>>& meta)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) {
        if (k == "warning")
            j["warnings"].push_back(v);
        else
            j[k] = v;
    }
    return j;
}

nlohmann::ordered_json spectrum_json(const SpectrumResult& res)
{
    nlohmann::ordered_json j;
    j["formula"] = res.table.formula;
    j["unit"] = res.unit;
    j["parameters"] = meta_json(res.table.meta);
    if (res.oracle_max_deviation)
        j["oracle_max_deviation"] = *res.oracle_max_deviation;
    nlohmann::ordered_json cols = {"delta_over_" + res.unit, "T", "R"};
    if (!res.oracle_rows.empty()) {
        cols.push_back("T_oracle");
        cols.push_back("R_oracle");
    }
    j["columns"] = cols;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < res.table.rows.size(); ++k) {
        const auto& r = res.table.rows[k];
        nlohmann::ordered_json row = {r.delta_k, r.T, r.R};
        if (!res.oracle_rows.empty()) {
            row.push_back(res.oracle_rows[k].T);
            row.push_back(res.oracle_rows[k].R);
        }
        rows.push_back(std::move(row));
    }
    return j;
}

nlohmann::ordered_json markov_fields(const MarkovCharacterization& m)
{
    nlohmann::ordered_json j;
    j["lamb_shift"] = m.lamb_shift;
    j["gamma_eff"] = m.gamma_eff;
    j["gamma_dipole"] = m.gamma_dipole;
    if (m.regime) {
        j["rho"] = m.regime->rho;
        j["regime"] = to_string(m.regime->regime);
    }
    return j;
}

}  // namespace

void write_spectrum_csv(std::ostream& os, const RunSpec&, const SpectrumResult& res)
{
    write_header(os, "spectrum", res.table.formula, res.unit, res.table.meta);
    if (res.oracle_max_deviation)
        os << "# oracle_max_deviation = " << format_number(*res.oracle_max_deviation) << '\n';
    write_rows_csv(os, res);
}

void write_spectrum_json(std::ostream& os, const RunSpec&, const SpectrumResult& res)
{
    os << spectrum_json(res).dump(2) << '\n';
}

void write_markov_csv(std::ostream& os, const RunSpec&, const MarkovResult& res)
{
    write_header(os, "markov", res.spectrum.table.formula, res.spectrum.unit, res.spectrum.table.meta);
    const auto& m = res.markov;
    os << "# lamb_shift = " << format_number(m.lamb_shift) << '\n';
    os << "# gamma_eff = " << format_number(m.gamma_eff) << '\n';
    os << "# gamma_dipole = " << format_number(m.gamma_dipole) << '\n';
    if (m.regime) {
        os << "# rho = " << format_number(m.regime->rho) << '\n';
        os << "# regime = " << to_string(m.regime->regime) << '\n';
    }
    if (res.spectrum.oracle_max_deviation)
        os << "# oracle_max_deviation = " << format_number(*res.spectrum.oracle_max_deviation) << '\n';
    write_rows_csv(os, res.spectrum);
}

void write_markov_json(std::ostream& os, const RunSpec&, const MarkovResult& res)
{
    auto j = markov_fields(res.markov);
    j["spectrum"] = spectrum_json(res.spectrum);
    os << j.dump(2) << '\n';
}

void write_map_csv(std::ostream& os, const RunSpec& spec, const MapResult& res)
{
    write_header(os, "map2d", res.formula, res.unit, spec_echo(spec));
    os << "delta_over_" << res.unit << ',' << to_string(spec.axis2->param) << ",R\n";
    const std::size_t n2 = res.axis2.size();
    for (std::size_t i = 0; i < res.axis1.size(); ++i)
        for (std::size_t k = 0; k < n2; ++k)
            os << format_number(res.axis1[i]) << ',' << format_number(res.axis2[k]) << ','
               << format_number(res.R[i * n2 + k]) << '\n';
}

void write_map_json(std::ostream& os, const RunSpec& spec, const MapResult& res)
{
    nlohmann::ordered_json j;
    j["formula"] = res.formula;
    j["unit"] = res.unit;
    j["parameters"] = meta_json(spec_echo(spec));
    j["axis1"] = res.axis1;
    j["axis2_name"] = to_string(spec.axis2->param);
    j["axis2"] = res.axis2;
    j["R"] = res.R;
    os << j.dump(2) << '\n';
}

void write_features_json(std::ostream& os, const RunSpec& spec, const FeatureReport& rep)
{
    nlohmann::ordered_json j;
    j["unit"] = unit_of(spec);
    j["parameters"] = meta_json(spec_echo(spec));
    auto points = [](const std::vector<VerifiedPoint>& v, const char* res_name) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& p : v)
            a.push_back({{"delta_k", p.delta_k}, {res_name, p.residual}});
        return a;
    };
    j["transmission_zeros"] = points(rep.transmission_zeros, "residual_R");
    j["reflection_unity_points"] = points(rep.reflection_unity_points, "residual_one_minus_R");
    j["triple_peak"] = rep.triple_peak;
    if (rep.band_gap)
        j["band_gap"] = {{"lo", rep.band_gap->lo},
                         {"hi", rep.band_gap->hi},
                         {"width", rep.band_gap->width()},
                         {"threshold", rep.band_gap->threshold}};
    else
        j["band_gap"] = nullptr;
    const bool de = spec.model == ModelKind::Distribution;
    j["gamma_eff_phase_parameter"] = de ? "phi_0_mod_2pi" : "theta";
    j["gamma_eff_zero_phases"] = rep.gamma_eff_zero_thetas;
    j["gamma_eff_local_max_phases"] = rep.gamma_eff_local_max_thetas;
    if (rep.walls)
        j["walls"] = {{"left", rep.walls->first},
                      {"right", rep.walls->second},
                      {"separation", rep.walls->second - rep.walls->first}};
    else
        j["walls"] = nullptr;
    j["warnings"] = rep.warnings;
    os << j.dump(2) << '\n';
}

void write_validation(std::ostream& os, const RunSpec& spec, const ValidationReport& rep)
{
    if (spec.format == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["passed"] = rep.passed();
        auto& arr = j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : rep.checks)
            arr.push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"max_residual", c.max_residual},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail}});
        os << j.dump(2) << '\n';
        return;
    }
    os << "check,status,max_residual,tolerance,detail\n";
    for (const auto& c : rep.checks)
        os << c.name << ',' << (c.passed ? "PASS" : "FAIL") << ',' << format_number(c.max_residual) << ','
           << format_number(c.tolerance) << ",\"" << c.detail << "\"\n";
    os << "# overall = " << (rep.passed() ? "PASS" : "FAIL") << '\n';
}

std::string plot_script(const RunSpec& spec, const std::string& data_path)
{
    std::ostringstream os;
    const std::string unit = unit_of(spec) == "gamma" ? "{/Symbol g}" : "{/Symbol G}~";
    os << "# gnuplot script for " << data_path << "\n"
       << "set datafile separator ','\n"
       << "set datafile commentschars '#'\n"
       << "set key autotitle columnhead\n";
    if (spec.mode == Mode::Map2d) {
        os << "set xlabel 'Delta_k / " << unit << "'\n"
           << "set ylabel '" << (spec.axis2 ? to_string(spec.axis2->param) : std::string("axis2")) << "'\n"
           << "set view map\nset pm3d at b\nset dgrid3d " << spec.axis2->grid.count << ',' << spec.grid.count
           << "\nsplot '" << data_path << "' using 1:2:3 with pm3d notitle\n";
    } else {
        os << "set xlabel 'Delta_k / " << unit << "'\nset yrange [0:1.05]\n"
           << "plot '" << data_path << "' using 1:2 with lines title 'T', '' using 1:3 with lines title 'R'\n";
    }
    return os.str();
}

}  // namespace giant_atom
