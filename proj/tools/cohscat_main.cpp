// SPDX-License-Identifier: Apache-2.0
//
// cohscat: command-line front end. Subcommands mirror the library modules:
//
//   delta1d    reflectivity/transmissivity of 1D delta arrays (CSV k,R,T)
//   born       Born cross-section tables (CSV theta,dsigma_dcostheta,
//              kernel_ratio + JSON metadata)
//   coherence  coherent-scattering verdicts from JSON specs (JSON out)
//   rutherford Rutherford cross sections and the scintillation analysis
//   table1     shortcut for `rutherford --table1`
//   sample     Monte Carlo angle generation (CSV angles or histogram JSON)
//
// Numeric output uses 17 significant digits; identical configs and seeds
// produce byte-identical artifacts. File output goes through a temp file
// plus atomic rename. Failures print a machine-readable JSON error object
// on stderr and exit non-zero. Set COHSCAT_LOG=info for progress notes.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohscat/cohscat.hpp"
#include "cohscat/config_json.hpp"

namespace {

using nlohmann::json;
using namespace cohscat;

bool log_enabled()
{
    char const* v = std::getenv("COHSCAT_LOG");
    if (v == nullptr)
    {
        return false;
    }
    std::string const s(v);
    return s == "info" || s == "debug" || s == "1";
}

void log_info(std::string const& msg)
{
    static bool const on = log_enabled();
    if (on)
    {
        std::cerr << "cohscat: " << msg << "\n";
    }
}

struct OutputSpec {
    std::string path = "-";
    std::string format = "csv";
};

void emit(OutputSpec const& out, std::string const& content)
{
    if (out.path == "-")
    {
        std::cout << content;
        return;
    }
    write_file_atomic(out.path, content);
    log_info("wrote " + out.path);
}

// ---- small parsers ------------------------------------------------------

std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s)
    {
        if (c == sep)
        {
            parts.push_back(cur);
            cur.clear();
        }
        else
        {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// "min:max:count" -> linear grid.
std::vector<double> parse_grid(std::string const& s)
{
    auto const parts = split(s, ':');
    if (parts.size() != 3)
    {
        fail("cli.bad_grid", "expected min:max:count, got '" + s + "'");
    }
    double const lo = parse_double(parts[0], "grid min");
    double const hi = parse_double(parts[1], "grid max");
    double const n = parse_double(parts[2], "grid count");
    if (n < 2 || n != std::floor(n))
    {
        fail("cli.bad_grid", "grid count must be an integer >= 2");
    }
    return linear_grid(lo, hi, static_cast<std::size_t>(n));
}

// "x:alpha,x:alpha,..." -> delta sites.
std::vector<DeltaSite> parse_sites(std::string const& s)
{
    std::vector<DeltaSite> sites;
    for (auto const& item : split(s, ','))
    {
        auto const kv = split(item, ':');
        if (kv.size() != 2)
        {
            fail("cli.bad_sites",
                 "expected position:strength pairs, got '" + item + "'");
        }
        sites.push_back({parse_double(kv[0], "site position"),
                         parse_double(kv[1], "site strength")});
    }
    return sites;
}

Vec3 parse_vec3(std::string const& s, std::string const& what)
{
    auto const parts = split(s, ',');
    if (parts.size() != 3)
    {
        fail("cli.bad_vector", "expected x,y,z for " + what);
    }
    return Vec3(parse_double(parts[0], what), parse_double(parts[1], what),
                parse_double(parts[2], what));
}

json load_json_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        fail("cli.unreadable_config", "cannot open '" + path + "'");
    }
    json j;
    try
    {
        in >> j;
    }
    catch (std::exception const& e)
    {
        fail("cli.bad_config",
             "invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

// ---- config-file support -------------------------------------------------
//
// Every flag has a config-file equivalent: --config file.json supplies
// values for long option names not given on the command line. Injected
// values are prepended so explicit flags (parsed later, TakeLast) win.

std::vector<std::string> config_argv(json const& cfg)
{
    if (!cfg.is_object())
    {
        fail("cli.bad_config", "config file must hold a JSON object");
    }
    std::vector<std::string> args;
    for (auto const& [key, value] : cfg.items())
    {
        if (value.is_boolean())
        {
            if (value.get<bool>())
            {
                args.push_back("--" + key);
            }
            continue;
        }
        std::string text;
        if (value.is_string())
        {
            text = value.get<std::string>();
        }
        else if (value.is_number_integer())
        {
            text = std::to_string(value.get<long long>());
        }
        else if (value.is_number())
        {
            text = format_double(value.get<double>());
        }
        else
        {
            fail("cli.bad_config",
                 "config key '" + key + "' must be scalar or boolean");
        }
        args.push_back("--" + key);
        args.push_back(text);
    }
    return args;
}

// ---- CSV/JSON assembly ---------------------------------------------------

std::string csv_line(std::vector<std::string> const& fields)
{
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i)
        {
            line += ',';
        }
        line += fields[i];
    }
    line += '\n';
    return line;
}

std::string table_csv(CrossSectionTable const& t)
{
    std::string out = "theta,dsigma_dcostheta,kernel_ratio\n";
    for (std::size_t i = 0; i < t.theta.size(); ++i)
    {
        out += csv_line({format_double(t.theta[i]),
                         format_double(t.dsigma_dcos[i]),
                         format_double(t.kernel_ratio[i])});
    }
    return out;
}

json table_rows_json(CrossSectionTable const& t)
{
    json rows = json::array();
    for (std::size_t i = 0; i < t.theta.size(); ++i)
    {
        rows.push_back({{"theta", t.theta[i]},
                        {"dsigma_dcostheta", t.dsigma_dcos[i]},
                        {"kernel_ratio", t.kernel_ratio[i]}});
    }
    return rows;
}

// ---- subcommand state ----------------------------------------------------

struct Delta1dArgs {
    OutputSpec out;
    std::string sites;
    std::string k_grid;
    double mass = 1.0;
    double k = 0.0;
    double beta = 0.0;
    double ka = -1.0;
    bool has_beta = false;
    bool has_ka = false;
    bool has_k = false;
};

struct BornArgs {
    OutputSpec out;
    std::string meta_path;
    // potential
    std::string potential;  // coulomb|yukawa|gaussian
    double coupling = 1.0;
    double screening_length = 0.0;
    double strength = 0.0;
    double width = 0.0;
    std::string potential_spec;  // JSON file alternative
    // kinematics
    double mr = 1.0;
    double er = -1.0;
    bool has_er = false;
    std::string md, mt, pd, pt;  // full two-body specification
    // target / charge
    double total_charge = 1.0;
    std::string target_path;
    std::string q_direction = "0,0,1";
    // angles
    std::string theta_grid;
    double theta = 0.0;
    bool has_theta = false;
    // validity advisory
    double extent = 0.0;
    bool has_extent = false;
    double total_theta_min = -1.0;
    bool has_total = false;
};

struct CoherenceArgs {
    OutputSpec out;
    std::string spec_path;
    double epsilon = default_epsilon;
};

struct RutherfordArgs {
    OutputSpec out;
    bool table1 = false;
    std::string table1_csv;
    int z = 0;
    double energy = 0.0;
    std::string theta_grid;
    double coupling = 0.0;
    bool has_coupling = false;
    std::string units = "internal";
};

struct SampleArgs {
    OutputSpec out;
    double theta_min = 0.0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string table_path;
    int hist_bins = 0;
};

// ---- handlers ------------------------------------------------------------

int run_delta1d(Delta1dArgs const& a)
{
    DeltaArray arr;
    std::vector<double> ks;
    if (a.has_beta || a.has_ka)
    {
        if (!a.has_beta || !a.has_ka)
        {
            fail("cli.bad_request", "--beta and --ka go together");
        }
        if (!a.sites.empty())
        {
            fail("cli.bad_request", "--beta/--ka conflicts with --sites");
        }
        if (!(a.beta > 0))
        {
            fail("delta1d.invalid_beta", "--beta must be > 0");
        }
        // Two equal deltas with k = 1, m = 1: strength 1/beta, spacing ka.
        arr = uniform_delta_array(2, a.ka, 1.0 / a.beta, 1.0);
        ks = {1.0};
    }
    else
    {
        if (a.sites.empty())
        {
            fail("cli.bad_request", "need --sites or --beta/--ka");
        }
        arr = make_delta_array(parse_sites(a.sites), a.mass);
        if (!a.k_grid.empty())
        {
            ks = parse_grid(a.k_grid);
        }
        else if (a.has_k)
        {
            ks = {a.k};
        }
        else
        {
            fail("cli.bad_request", "need --k-grid or --k");
        }
    }

    if (a.out.format == "csv")
    {
        std::string out = "k,R,T\n";
        for (double k : ks)
        {
            auto const amp = transfer_matrix_solve(arr, k);
            out += csv_line({format_double(k), format_double(amp.R),
                             format_double(amp.T)});
        }
        emit(a.out, out);
    }
    else
    {
        json rows = json::array();
        for (double k : ks)
        {
            auto const amp = transfer_matrix_solve(arr, k);
            rows.push_back({{"k", k}, {"R", amp.R}, {"T", amp.T}});
        }
        emit(a.out, json{{"rows", rows}}.dump(2) + "\n");
    }
    return 0;
}

Potential born_potential(BornArgs const& a)
{
    if (!a.potential_spec.empty())
    {
        return potential_from_json(load_json_file(a.potential_spec));
    }
    if (a.potential == "coulomb")
    {
        return Potential::coulomb(a.coupling);
    }
    if (a.potential == "yukawa")
    {
        return Potential::yukawa(a.coupling, a.screening_length);
    }
    if (a.potential == "gaussian")
    {
        return Potential::gaussian(a.strength, a.width);
    }
    fail("cli.bad_potential",
         "unknown or missing potential '" + a.potential + "'");
}

Kinematics born_kinematics(BornArgs const& a)
{
    if (!a.md.empty() || !a.mt.empty() || !a.pd.empty() || !a.pt.empty())
    {
        if (a.md.empty() || a.mt.empty() || a.pd.empty())
        {
            fail("cli.bad_request",
                 "full kinematics needs --md, --M and --pd");
        }
        Vec3 const p = parse_vec3(a.pd, "--pd");
        Vec3 const big_p
            = a.pt.empty() ? Vec3::Zero() : parse_vec3(a.pt, "--P");
        return make_kinematics(parse_double(a.md, "--md"),
                               parse_double(a.mt, "--M"), p, big_p);
    }
    if (!a.has_er)
    {
        fail("cli.bad_request", "need --er (with --mr) or full kinematics");
    }
    return kinematics_from_relative(a.mr, a.er);
}

int run_born(BornArgs const& a)
{
    Potential const pot = born_potential(a);
    Kinematics const kin = born_kinematics(a);

    std::vector<double> thetas;
    if (!a.theta_grid.empty())
    {
        thetas = parse_grid(a.theta_grid);
    }
    else if (a.has_theta)
    {
        thetas = {a.theta};
    }
    else
    {
        fail("cli.bad_request", "need --theta-grid or --theta");
    }

    std::optional<GaussianTarget> target;
    if (!a.target_path.empty())
    {
        target = target_from_json(load_json_file(a.target_path));
    }
    Vec3 const qdir = parse_vec3(a.q_direction, "--q-direction");

    CrossSectionTable const table
        = target ? build_target_table(pot, kin, *target, thetas, qdir)
                 : build_coherent_table(pot, kin, a.total_charge, thetas);

    json meta{{"m_r", table.m_r},
              {"E_r", table.E_r},
              {"G", table.total_charge},
              {"potential", table.potential_desc},
              {"points", table.theta.size()}};

    // Perturbative-regime advisory; never blocks the computation.
    double extent = a.has_extent ? a.extent : pot.range_hint();
    if (std::isfinite(extent) && extent > 0 && kin.E_r > 0)
    {
        auto const rep = born_validity(pot, kin, extent);
        meta["born_validity"] = {{"verdict", to_string(rep.verdict)},
                                 {"ratio", rep.ratio},
                                 {"extent", extent}};
        if (rep.verdict != BornValidity::valid)
        {
            log_info(std::string("born validity ") + to_string(rep.verdict)
                     + " (ratio " + format_double(rep.ratio) + ")");
        }
    }
    else
    {
        meta["born_validity"] = {{"verdict", "not_evaluated"}};
    }

    if (a.has_total)
    {
        meta["total_cross_section"] = coherent_total_cross_section(
            pot, kin, table.total_charge, a.total_theta_min);
        meta["total_theta_min"] = a.total_theta_min;
    }

    if (a.out.format == "csv")
    {
        emit(a.out, table_csv(table));
        if (!a.meta_path.empty())
        {
            write_file_atomic(a.meta_path, meta.dump(2) + "\n");
            log_info("wrote " + a.meta_path);
        }
        else if (a.out.path != "-")
        {
            std::string const side = a.out.path + ".meta.json";
            write_file_atomic(side, meta.dump(2) + "\n");
            log_info("wrote " + side);
        }
    }
    else
    {
        json doc = meta;
        doc["rows"] = table_rows_json(table);
        emit(a.out, doc.dump(2) + "\n");
    }
    return 0;
}

int run_coherence(CoherenceArgs const& a)
{
    if (a.spec_path.empty())
    {
        fail("cli.bad_request", "coherence needs --spec <file.json>");
    }
    json const spec = load_json_file(a.spec_path);
    if (!spec.is_object() || !spec.contains("mode"))
    {
        fail("config.bad_spec", "coherence spec needs a 'mode' field");
    }
    std::string const mode = spec["mode"].get<std::string>();
    double const l = require_number(spec, "L");
    double const eps
        = spec.contains("epsilon") && a.epsilon == default_epsilon
              ? spec["epsilon"].get<double>()
              : a.epsilon;

    json out{{"mode", mode}, {"L", l}, {"epsilon", eps}};
    if (mode == "plane_wave")
    {
        auto const v = plane_wave_coherent(require_number(spec, "p_r"), l, eps);
        out["coherent"] = v.coherent;
        out["ratio"] = v.ratio;
    }
    else if (mode == "packet")
    {
        WavePacket const wp{require_number(spec, "mean_momentum"),
                            require_number(spec, "momentum_spread")};
        auto const v = packet_coherent(wp, l, eps);
        out["coherent"] = v.coherent;
        out["ratio"] = v.ratio;
        if (v.position_spread)
        {
            out["position_spread"] = *v.position_spread;
            out["position_statement"] = *v.position_statement;
        }
    }
    else if (mode == "ensemble" || mode == "decomposition")
    {
        if (!spec.contains("members"))
        {
            fail("config.bad_spec", "'" + mode + "' needs 'members'");
        }
        auto const ens = ensemble_from_json(spec["members"]);
        if (mode == "ensemble")
        {
            auto const v = ensemble_coherent(ens, l, eps);
            out["coherent"] = v.coherent;
            out["ratio"] = v.ratio;
            out["second_moment"] = v.second_moment;
        }
        else
        {
            auto const v = small_packet_decomposition_violates(ens, l);
            out["applicable"] = v.applicable;
            out["verified"] = v.verified;
            out["second_moment"] = v.second_moment;
            out["bound"] = v.bound;
        }
    }
    else
    {
        fail("config.bad_spec", "unknown coherence mode '" + mode + "'");
    }
    emit(a.out, out.dump(2) + "\n");
    return 0;
}

int run_rutherford(RutherfordArgs const& a)
{
    if (a.table1)
    {
        auto const recs = a.table1_csv.empty()
                              ? builtin_scintillation_table()
                              : load_scintillation_csv(a.table1_csv);
        auto const analysis = table1_analysis(recs);
        if (a.out.format == "csv")
        {
            std::string out = "material,A,Z,N,NsqrtA_over_Z2\n";
            for (auto const& row : analysis.rows)
            {
                out += csv_line({row.record.material,
                                 std::to_string(row.record.mass_number),
                                 std::to_string(row.record.atomic_number),
                                 format_double(row.record.counts),
                                 format_double(row.statistic)});
            }
            emit(a.out, out);
        }
        else
        {
            json rows = json::array();
            for (auto const& row : analysis.rows)
            {
                rows.push_back({{"material", row.record.material},
                                {"A", row.record.mass_number},
                                {"Z", row.record.atomic_number},
                                {"N", row.record.counts},
                                {"NsqrtA_over_Z2", row.statistic}});
            }
            emit(a.out, json{{"rows", rows},
                             {"mean", analysis.mean},
                             {"max_deviation", analysis.max_deviation}}
                                .dump(2)
                            + "\n");
        }
        return 0;
    }

    if (a.z < 1 || a.theta_grid.empty() || !(a.energy > 0))
    {
        fail("cli.bad_request",
             "rutherford needs --table1 or --Z, --energy and --theta-grid");
    }
    // Practical input units: MeV for nuclear, Hartree for atomic; cross
    // sections come back in fm^2 / a0^2 respectively.
    UnitContext const units = UnitContext::by_name(a.units);
    double const e_internal = units.energy_to_internal(a.energy);
    double const g
        = a.has_coupling
              ? a.coupling
              : (a.units == "internal"
                     ? 1.0
                     : coulomb_coupling_per_proton(units.system()));
    auto const thetas = parse_grid(a.theta_grid);
    if (a.out.format == "csv")
    {
        std::string out = "theta,dsigma_dcostheta\n";
        for (double th : thetas)
        {
            double const v = units.cross_section_to_practical(
                rutherford_differential(a.z, e_internal, th, g));
            out += csv_line({format_double(th), format_double(v)});
        }
        emit(a.out, out);
    }
    else
    {
        json rows = json::array();
        for (double th : thetas)
        {
            rows.push_back(
                {{"theta", th},
                 {"dsigma_dcostheta",
                  units.cross_section_to_practical(
                      rutherford_differential(a.z, e_internal, th, g))}});
        }
        emit(a.out, json{{"Z", a.z},
                         {"energy", a.energy},
                         {"units", a.units},
                         {"coupling_per_proton", g},
                         {"rows", rows}}
                            .dump(2)
                        + "\n");
    }
    return 0;
}

CrossSectionTable table_from_csv(std::string const& path)
{
    CsvDocument const doc = read_csv(path);
    if (doc.header.size() < 2 || doc.header[0] != "theta"
        || doc.header[1] != "dsigma_dcostheta")
    {
        fail("cli.bad_table",
             "expected columns theta,dsigma_dcostheta in '" + path + "'");
    }
    CrossSectionTable t;
    for (auto const& row : doc.rows)
    {
        t.theta.push_back(parse_double(row[0], "theta"));
        t.dsigma_dcos.push_back(parse_double(row[1], "dsigma_dcostheta"));
    }
    t.kernel_ratio.assign(t.theta.size(), 1.0);
    return t;
}

int run_sample(SampleArgs const& a)
{
    std::vector<double> angles;
    if (!a.table_path.empty())
    {
        angles = sample_general(table_from_csv(a.table_path), a.count, a.seed);
    }
    else
    {
        AngularSampleSpec const spec{a.theta_min, a.count, a.seed};
        angles = a.workers > 1 ? sample_rutherford_partitioned(spec, a.workers)
                               : sample_rutherford(spec);
    }

    if (a.hist_bins > 0)
    {
        // Histogram over cos(theta), emitted as JSON.
        double lo = 1.0, hi = -1.0;
        for (double th : angles)
        {
            lo = std::min(lo, std::cos(th));
            hi = std::max(hi, std::cos(th));
        }
        std::vector<std::int64_t> counts(a.hist_bins, 0);
        double const w = (hi - lo) > 0 ? (hi - lo) : 1.0;
        for (double th : angles)
        {
            int b = static_cast<int>((std::cos(th) - lo) / w * a.hist_bins);
            b = std::clamp(b, 0, a.hist_bins - 1);
            ++counts[static_cast<std::size_t>(b)];
        }
        json edges = json::array();
        for (int b = 0; b <= a.hist_bins; ++b)
        {
            edges.push_back(lo + w * b / a.hist_bins);
        }
        emit(a.out, json{{"cos_theta_edges", edges},
                         {"counts", counts},
                         {"count", angles.size()},
                         {"seed", a.seed}}
                            .dump(2)
                        + "\n");
        return 0;
    }

    std::string out = "theta\n";
    for (double th : angles)
    {
        out += format_double(th);
        out += '\n';
    }
    emit(a.out, out);
    return 0;
}

// ---- wiring ---------------------------------------------------------------

void print_error_json(std::string const& code, std::string const& message)
{
    std::cerr << json{{"error", {{"code", code}, {"message", message}}}}.dump()
              << "\n";
}

CLI::Option* takelast(CLI::Option* opt)
{
    return opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_output_options(CLI::App* cmd, OutputSpec& out)
{
    takelast(cmd->add_option("-o,--output", out.path,
                             "output path, or - for stdout"));
    takelast(cmd->add_option("--format", out.format, "csv or json")
                 ->check(CLI::IsMember({"csv", "json"})));
}

int dispatch(int argc, char** argv)
{
    CLI::App app{"coherent-scattering toolbox"};
    app.require_subcommand(1);

    Delta1dArgs da;
    auto* delta = app.add_subcommand(
        "delta1d", "1D delta-array reflectivity/transmissivity");
    add_output_options(delta, da.out);
    takelast(delta->add_option("--config", "JSON config file"));
    takelast(delta->add_option("--sites", da.sites,
                               "sites as position:strength,..."));
    takelast(delta->add_option("--mass", da.mass, "particle mass"));
    takelast(delta->add_option("--k-grid", da.k_grid, "wave numbers min:max:n"));
    auto* kopt = takelast(delta->add_option("--k", da.k, "single wave number"));
    auto* bopt = takelast(
        delta->add_option("--beta", da.beta, "two-delta coupling k/(m alpha)"));
    auto* kaopt
        = takelast(delta->add_option("--ka", da.ka, "two-delta spacing k a"));

    BornArgs ba;
    auto* born = app.add_subcommand("born", "Born cross-section tables");
    add_output_options(born, ba.out);
    takelast(born->add_option("--config", "JSON config file"));
    takelast(born->add_option("--meta", ba.meta_path, "metadata JSON path"));
    takelast(born->add_option("--potential", ba.potential,
                              "coulomb|yukawa|gaussian"));
    takelast(born->add_option("--coupling", ba.coupling, "potential coupling"));
    takelast(born->add_option("--screening-length", ba.screening_length,
                              "Yukawa screening length"));
    takelast(born->add_option("--strength", ba.strength, "Gaussian depth V0"));
    takelast(born->add_option("--width", ba.width, "Gaussian width"));
    takelast(born->add_option("--potential-spec", ba.potential_spec,
                              "JSON potential spec file"));
    takelast(born->add_option("--mr", ba.mr, "reduced mass"));
    auto* eropt
        = takelast(born->add_option("--er", ba.er, "relative kinetic energy"));
    takelast(born->add_option("--md", ba.md, "incident mass"));
    takelast(born->add_option("--M", ba.mt, "target mass"));
    takelast(born->add_option("--pd", ba.pd, "incident momentum x,y,z"));
    takelast(born->add_option("--P", ba.pt, "target momentum x,y,z"));
    takelast(born->add_option("--G", ba.total_charge, "total coupling"));
    takelast(born->add_option("--target", ba.target_path,
                              "JSON constituent list for a structured target"));
    takelast(born->add_option("--q-direction", ba.q_direction,
                              "kernel momentum-transfer direction x,y,z"));
    takelast(born->add_option("--theta-grid", ba.theta_grid,
                              "angles min:max:n (radians)"));
    auto* thopt
        = takelast(born->add_option("--theta", ba.theta, "single angle"));
    auto* extopt = takelast(
        born->add_option("--extent", ba.extent, "validity-check radius"));
    auto* totopt = takelast(born->add_option(
        "--total-theta-min", ba.total_theta_min,
        "also integrate the total cross section from this angle"));

    CoherenceArgs ca;
    auto* coher
        = app.add_subcommand("coherence", "coherence-regime verdicts");
    add_output_options(coher, ca.out);
    takelast(coher->add_option("--config", "JSON config file"));
    takelast(coher->add_option("--spec", ca.spec_path,
                               "JSON spec: mode, L, and mode fields"));
    takelast(coher->add_option("--epsilon", ca.epsilon,
                               "threshold for 'much smaller'"));

    RutherfordArgs ra;
    auto* ruth = app.add_subcommand(
        "rutherford", "Rutherford cross sections and count analysis");
    add_output_options(ruth, ra.out);
    takelast(ruth->add_option("--config", "JSON config file"));
    ruth->add_flag("--table1", ra.table1, "emit the scintillation analysis");
    takelast(ruth->add_option("--table1-csv", ra.table1_csv,
                              "override the bundled data table"));
    takelast(ruth->add_option("--Z", ra.z, "atomic number"));
    takelast(ruth->add_option("--energy", ra.energy,
                              "incident energy (unit system applies)"));
    takelast(
        ruth->add_option("--theta-grid", ra.theta_grid, "angles min:max:n"));
    auto* gopt = takelast(ruth->add_option("--g", ra.coupling,
                                           "per-proton coupling override"));
    takelast(ruth->add_option("--units", ra.units,
                              "internal|nuclear|atomic")
                 ->check(CLI::IsMember({"internal", "nuclear", "atomic"})));

    RutherfordArgs ta;
    ta.table1 = true;
    auto* table1 = app.add_subcommand(
        "table1", "scintillation analysis (rutherford --table1)");
    add_output_options(table1, ta.out);
    takelast(table1->add_option("--config", "JSON config file"));
    takelast(table1->add_option("--table1-csv", ta.table1_csv,
                                "override the bundled data table"));

    SampleArgs sa;
    auto* sample
        = app.add_subcommand("sample", "Monte Carlo angle generation");
    add_output_options(sample, sa.out);
    takelast(sample->add_option("--config", "JSON config file"));
    takelast(sample->add_option("--theta-min", sa.theta_min,
                                "lower angular cutoff (radians)"));
    takelast(sample->add_option("--count", sa.count, "number of samples"));
    takelast(sample->add_option("--seed", sa.seed, "RNG seed"));
    takelast(sample->add_option("--workers", sa.workers,
                                "partitioned generation streams"));
    takelast(sample->add_option("--table", sa.table_path,
                                "sample a tabulated distribution (CSV)"));
    takelast(sample->add_option("--hist", sa.hist_bins,
                                "emit a cos(theta) histogram with N bins"));

    // Config-file pass: located before real parsing so command-line flags,
    // parsed later under TakeLast, win on conflict.
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
    {
        if (args[i] == "--config")
        {
            auto const injected = config_argv(load_json_file(args[i + 1]));
            args.insert(args.begin() + 1, injected.begin(), injected.end());
            break;
        }
    }

    std::vector<char*> cargs;
    cargs.push_back(argv[0]);
    for (auto& s : args)
    {
        cargs.push_back(s.data());
    }
    try
    {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);  // prints help or the parse error
        if (code != 0)
        {
            print_error_json("cli.parse_error", e.what());
        }
        return code;
    }

    da.has_beta = bopt->count() > 0;
    da.has_ka = kaopt->count() > 0;
    da.has_k = kopt->count() > 0;
    ba.has_er = eropt->count() > 0;
    ba.has_theta = thopt->count() > 0;
    ba.has_extent = extopt->count() > 0;
    ba.has_total = totopt->count() > 0;
    ra.has_coupling = gopt->count() > 0;

    if (delta->parsed())
    {
        return run_delta1d(da);
    }
    if (born->parsed())
    {
        return run_born(ba);
    }
    if (coher->parsed())
    {
        return run_coherence(ca);
    }
    if (ruth->parsed())
    {
        return run_rutherford(ra);
    }
    if (table1->parsed())
    {
        return run_rutherford(ta);
    }
    if (sample->parsed())
    {
        return run_sample(sa);
    }
    fail("cli.unknown_subcommand", "no subcommand selected");
}

}  // namespace

int main(int argc, char** argv)
{
    try
    {
        return dispatch(argc, argv);
    }
    catch (Error const& e)
    {
        print_error_json(e.code(), e.what());
        return 1;
    }
    catch (std::exception const& e)
    {
        print_error_json("internal.unexpected", e.what());
        return 1;
    }
}
