// ga-scatter: spectra, maps, Markov characterisation, feature reports and
// the validation suite for giant-atom scattering.

#include "giant_atom/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ga = giant_atom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBadInput = 2;

struct Options {
    std::string config;
    std::string out;
    std::string format;
    std::string grid;
    std::string plot_script;
    bool oracle = false;
    int threads = 0;
};

ga::GridSpec parse_grid_flag(const std::string& text)
{
    const auto spec = ga::parse_run_spec_string("grid = " + text);
    return spec.grid;
}

int run(ga::Mode mode, const Options& opt)
{
    ga::RunSpec spec = opt.config.empty() ? ga::RunSpec{} : ga::load_run_spec(opt.config);
    spec.mode = mode;
    if (!opt.grid.empty())
        spec.grid = parse_grid_flag(opt.grid);
    if (!opt.format.empty())
        spec.format = ga::parse_run_spec_string("format = " + opt.format).format;
    if (!opt.out.empty())
        spec.out = opt.out;
    if (opt.oracle)
        spec.oracle = true;

    int threads = opt.threads;
    if (threads <= 0)
        if (const char* env = std::getenv("GA_SCATTER_THREADS"))
            threads = std::atoi(env);
    ga::set_thread_count(threads);

    std::ostringstream buf;
    int status = kExitOk;
    const bool json = spec.format == ga::OutputFormat::Json;
    switch (mode) {
    case ga::Mode::Spectrum: {
        const auto res = ga::run_spectrum(spec);
        json ? ga::write_spectrum_json(buf, spec, res) : ga::write_spectrum_csv(buf, spec, res);
        break;
    }
    case ga::Mode::Markov: {
        const auto res = ga::run_markov(spec);
        json ? ga::write_markov_json(buf, spec, res) : ga::write_markov_csv(buf, spec, res);
        break;
    }
    case ga::Mode::Map2d: {
        const auto res = ga::run_map2d(spec);
        json ? ga::write_map_json(buf, spec, res) : ga::write_map_csv(buf, spec, res);
        break;
    }
    case ga::Mode::Features:
        ga::write_features_json(buf, spec, ga::run_features(spec));
        break;
    case ga::Mode::Validate: {
        const auto rep = ga::run_validate(spec);
        ga::write_validation(buf, spec, rep);
        if (!rep.passed())
            status = kExitValidation;
        break;
    }
    }

    if (spec.out.empty() || spec.out == "-") {
        std::cout << buf.str();
    } else {
        std::ofstream f(spec.out, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot write '" + spec.out + "'");
        f << buf.str();
    }
    if (!opt.plot_script.empty()) {
        std::ofstream f(opt.plot_script, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot write '" + opt.plot_script + "'");
        f << ga::plot_script(spec, spec.out.empty() ? "-" : spec.out);
    }
    return status;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Single-photon scattering spectra of giant atoms"};
    app.require_subcommand(1);
    Options opt;

    struct Sub {
        const char* name;
        const char* help;
        ga::Mode mode;
    };
    const Sub subs[] = {
        {"spectrum", "transmittance and reflectance over a detuning grid", ga::Mode::Spectrum},
        {"map2d", "reflectance over detuning and a secondary phase parameter", ga::Mode::Map2d},
        {"markov", "Lamb shift, effective decay, regime and Lorentzian spectrum", ga::Mode::Markov},
        {"features", "transmission zeros, unity points, band gap and walls (JSON)", ga::Mode::Features},
        {"validate", "run the invariant suite; exit 1 on any failure", ga::Mode::Validate},
    };
    std::vector<std::pair<CLI::App*, ga::Mode>> commands;
    for (const auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        sc->add_option("--config", opt.config, "run specification (key = value)")->check(CLI::ExistingFile);
        sc->add_option("--out", opt.out, "output path (stdout when omitted)");
        sc->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sc->add_option("--grid", opt.grid, "detuning grid lo:hi:count");
        sc->add_flag("--oracle", opt.oracle, "add independent oracle columns");
        sc->add_option("--threads", opt.threads, "worker threads (GA_SCATTER_THREADS otherwise)")
            ->check(CLI::NonNegativeNumber);
        sc->add_option("--plot-script", opt.plot_script, "also write a gnuplot script");
        commands.emplace_back(sc, s.mode);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadInput;
    }

    try {
        for (const auto& [sc, mode] : commands)
            if (sc->parsed())
                return run(mode, opt);
    } catch (const ga::SpecError& e) {
        std::cerr << "ga-scatter: invalid specification: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ga-scatter: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "ga-scatter: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}
