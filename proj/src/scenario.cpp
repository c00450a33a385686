#include "kzent/scenario.hpp"

#include "kzent/closed_form_check.hpp"
#include "kzent/domain_sampler.hpp"
#include "kzent/errors.hpp"
#include "kzent/exact_oracle.hpp"
#include "kzent/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#ifndef KZENT_VERSION
#define KZENT_VERSION "0.0.0"
#endif

namespace kzent {

std::string_view version() { return KZENT_VERSION; }

std::string_view to_string(Mode m)
{
    switch (m) {
    case Mode::para: return "para";
    case Mode::dia: return "dia";
    case Mode::compare: return "compare";
    case Mode::sweep_g: return "sweep-g";
    case Mode::oracle_check: return "oracle-check";
    }
    return "?";
}

Mode mode_from_string(std::string_view s)
{
    for (Mode m : {Mode::para, Mode::dia, Mode::compare, Mode::sweep_g, Mode::oracle_check})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown mode '" + std::string(s) +
                      "' (expected para, dia, compare, sweep-g or oracle-check)");
}

// -- parsing ---------------------------------------------------------------

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where)
{
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
}

double number(const json& obj, const char* key, std::string_view where)
{
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError("missing '" + std::string(key) + "' in " + std::string(where));
    if (!it->is_number()) throw ConfigError("'" + std::string(key) + "' in " + std::string(where) + " must be a number");
    const double x = it->get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + std::string(key) + "' must be finite");
    return x;
}

double number_or(const json& obj, const char* key, double fallback, std::string_view where)
{
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

int integer(const json& obj, const char* key, std::string_view where)
{
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError("missing '" + std::string(key) + "' in " + std::string(where));
    if (!it->is_number_integer()) throw ConfigError("'" + std::string(key) + "' must be an integer");
    const auto v = it->get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError("'" + std::string(key) + "' out of range");
    return static_cast<int>(v);
}

std::string text(const json& obj, const char* key, std::string_view where)
{
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        throw ConfigError("'" + std::string(key) + "' in " + std::string(where) + " must be a string");
    return it->get<std::string>();
}

TimeGrid parse_grid(const json& j, std::string_view where)
{
    reject_unknown(j, {"start", "stop", "points"}, where);
    TimeGrid g;
    g.start = number(j, "start", where);
    g.stop = number(j, "stop", where);
    g.points = integer(j, "points", where);
    return g;
}

DiaRun parse_run(const json& j, std::size_t index)
{
    const std::string where = "dia[" + std::to_string(index) + "]";
    reject_unknown(j, {"label", "h0", "v", "t0_offset", "xi0", "tau0", "nu", "z", "hc"}, where);
    DiaRun r;
    r.label = j.contains("label") ? text(j, "label", where) : "run" + std::to_string(index + 1);
    QuenchSchedule s;
    s.h0 = number(j, "h0", where);
    s.v = number(j, "v", where);
    s.xi0 = number_or(j, "xi0", s.xi0, where);
    s.tau0 = number_or(j, "tau0", s.tau0, where);
    s.nu = number_or(j, "nu", s.nu, where);
    s.z = number_or(j, "z", s.z, where);
    s.hc = number_or(j, "hc", s.hc, where);
    r.schedule = s;
    r.t0_offset = number_or(j, "t0_offset", 0.0, where);
    return r;
}

json grid_json(const TimeGrid& g) { return {{"start", g.start}, {"stop", g.stop}, {"points", g.points}}; }

}  // namespace

ScenarioConfig parse_config(const json& j)
{
    reject_unknown(j,
                   {"name", "mode", "N", "g", "para", "dia", "grid", "g_grid", "seed", "realizations",
                    "magnetization", "weak_coupling", "out_dir", "stem"},
                   "config");
    ScenarioConfig c;
    if (j.contains("name")) c.name = text(j, "name", "config");
    if (j.contains("mode")) c.mode = mode_from_string(text(j, "mode", "config"));
    c.N = integer(j, "N", "config");
    if (j.contains("g")) c.g = number(j, "g", "config");
    if (j.contains("para")) {
        reject_unknown(j["para"], {"h"}, "para");
        c.para_h = number(j["para"], "h", "para");
    }
    if (j.contains("dia")) {
        const json& d = j["dia"];
        if (d.is_array()) {
            for (std::size_t i = 0; i < d.size(); ++i) c.dia_runs.push_back(parse_run(d[i], i));
        } else {
            c.dia_runs.push_back(parse_run(d, 0));
        }
    }
    if (j.contains("grid")) c.grid = parse_grid(j["grid"], "grid");
    if (j.contains("g_grid")) c.g_grid = parse_grid(j["g_grid"], "g_grid");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("realizations")) c.realizations = integer(j, "realizations", "config");
    if (j.contains("magnetization")) {
        const json& m = j["magnetization"];
        reject_unknown(m, {"n_ref", "field_scale"}, "magnetization");
        if (m.contains("n_ref")) c.magnetization.n_ref = integer(m, "n_ref", "magnetization");
        c.magnetization.field_scale = number_or(m, "field_scale", c.magnetization.field_scale, "magnetization");
    }
    if (j.contains("weak_coupling")) {
        const json& w = j["weak_coupling"];
        reject_unknown(w, {"max_g", "max_g_over_h"}, "weak_coupling");
        c.guard.max_g = number_or(w, "max_g", c.guard.max_g, "weak_coupling");
        c.guard.max_g_over_h = number_or(w, "max_g_over_h", c.guard.max_g_over_h, "weak_coupling");
    }
    if (j.contains("out_dir")) c.out_dir = text(j, "out_dir", "config");
    c.stem = j.contains("stem") ? text(j, "stem", "config") : c.name;
    return c;
}

ScenarioConfig parse_config_text(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const ScenarioConfig& c)
{
    json j;
    j["name"] = c.name;
    j["mode"] = to_string(c.mode);
    j["N"] = c.N;
    j["g"] = c.g;
    if (c.para_h) j["para"] = {{"h", *c.para_h}};
    if (!c.dia_runs.empty()) {
        json runs = json::array();
        for (const auto& r : c.dia_runs) {
            const auto& s = r.schedule;
            runs.push_back({{"label", r.label},
                            {"h0", s.h0},
                            {"v", s.v},
                            {"t0_offset", r.t0_offset},
                            {"xi0", s.xi0},
                            {"tau0", s.tau0},
                            {"nu", s.nu},
                            {"z", s.z},
                            {"hc", s.hc}});
        }
        j["dia"] = runs;
    }
    j["grid"] = grid_json(c.grid);
    if (c.g_grid) j["g_grid"] = grid_json(*c.g_grid);
    j["seed"] = c.seed;
    j["realizations"] = c.realizations;
    j["magnetization"] = {{"n_ref", c.magnetization.n_ref}, {"field_scale", c.magnetization.field_scale}};
    j["weak_coupling"] = {{"max_g", c.guard.max_g}, {"max_g_over_h", c.guard.max_g_over_h}};
    j["stem"] = c.stem;
    return j;
}

// -- validation ------------------------------------------------------------

namespace {

bool safe_label(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
    });
}

std::vector<double> couplings(const ScenarioConfig& c)
{
    if (c.mode == Mode::sweep_g) return c.g_grid->values();
    return {c.g};
}

void validate_run(const ScenarioConfig& c, const DiaRun& r)
{
    const std::string where = "dia run '" + r.label + "': ";
    try {
        r.schedule.validate_for_quench();
        if (r.t0_offset < 0.0) throw ConfigError("t0_offset must be >= 0 so that t0 >= t_bar");
        const double t_bar = freeze_out_time(r.schedule);
        const double span = c.grid.stop;
        if (r.schedule.v * span > kMaxQuenchSpan) {
            std::ostringstream os;
            os << "v * span = " << r.schedule.v * span << " exceeds " << kMaxQuenchSpan
               << "; shorten the grid or slow the quench";
            throw ConfigError(os.str());
        }
        const double h_end = field_at(r.schedule, t_bar + r.t0_offset + span);
        if (h_end < r.schedule.hc) {
            std::ostringstream os;
            os << "field reaches " << h_end << " < hc = " << r.schedule.hc << " within the grid";
            throw ConfigError(os.str());
        }
        for (double g : couplings(c)) c.guard.check(g, h_end);
        domain_partition(c.N, r.schedule);
    } catch (const ConfigError& e) {
        throw ConfigError(where + e.what());
    } catch (const PartitionError& e) {
        throw ConfigError(where + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(where + e.what());
    }
}

}  // namespace

void ScenarioConfig::validate() const
{
    if (N < 2) throw ConfigError("N must be >= 2");
    if (!std::isfinite(g) || g < 0.0) throw ConfigError("g must be finite and >= 0");
    if (realizations < 1 || realizations > 100000) throw ConfigError("realizations must lie in [1, 100000]");
    if (magnetization.n_ref < 2 || magnetization.n_ref > 16)
        throw ConfigError("magnetization.n_ref must lie in [2, 16]");
    if (!(magnetization.field_scale > 0.0)) throw ConfigError("magnetization.field_scale must be > 0");
    if (!(guard.max_g > 0.0) || !(guard.max_g_over_h > 0.0))
        throw ConfigError("weak_coupling bounds must be > 0");
    if (!safe_label(stem)) throw ConfigError("stem must be a non-empty [A-Za-z0-9_.-] string");
    grid.validate();

    const bool needs_para = mode == Mode::para || mode == Mode::compare || mode == Mode::sweep_g ||
                            mode == Mode::oracle_check;
    const bool needs_dia = mode == Mode::dia || mode == Mode::compare || mode == Mode::sweep_g;
    if (needs_para && !para_h) throw ConfigError(std::string(to_string(mode)) + " mode needs para.h");
    if (needs_dia && dia_runs.empty()) throw ConfigError(std::string(to_string(mode)) + " mode needs a dia run");
    if ((mode == Mode::compare || mode == Mode::sweep_g) && dia_runs.size() != 1)
        throw ConfigError(std::string(to_string(mode)) + " mode takes exactly one dia run");
    if (mode == Mode::sweep_g) {
        if (!g_grid) throw ConfigError("sweep-g mode needs g_grid");
        g_grid->validate();
        if (!(g_grid->start > 0.0)) throw ConfigError("g_grid must start above 0");
    }

    if (para_h) {
        if (!(*para_h > 0.0)) throw ConfigError("para.h must be > 0");
        for (double gv : couplings(*this)) guard.check(gv, *para_h);
    }
    std::set<std::string> labels;
    for (const auto& r : dia_runs) {
        if (!safe_label(r.label)) throw ConfigError("dia label '" + r.label + "' must match [A-Za-z0-9_.-]+");
        if (!labels.insert(r.label).second) throw ConfigError("duplicate dia label '" + r.label + "'");
        validate_run(*this, r);
    }
}

// -- execution -------------------------------------------------------------

PreparedDiaRun prepare_dia_run(const ScenarioConfig& cfg, const DiaRun& run)
{
    PreparedDiaRun p;
    p.run = run;
    p.t_bar = freeze_out_time(run.schedule);
    p.t0 = p.t_bar + run.t0_offset;
    p.partition = domain_partition(cfg.N, run.schedule);
    const double scale = cfg.magnetization.field_scale;
    p.m0z = equilibrium_mz(scale * field_at(run.schedule, p.t0), cfg.magnetization.n_ref);
    p.mdz = equilibrium_mz(scale * field_at(run.schedule, p.t_bar), cfg.magnetization.n_ref);

    p.realizations.resize(static_cast<std::size_t>(cfg.realizations));
    for (int r = 0; r < cfg.realizations; ++r) {
        DiaConfig& d = p.realizations[static_cast<std::size_t>(r)];
        d.N = cfg.N;
        d.g = cfg.g;
        d.schedule = run.schedule;
        d.t0 = p.t0;
        d.partition = p.partition;
        d.ensemble =
            sample_initial_directions(p.partition.n_d, p.m0z, p.mdz, cfg.seed, static_cast<std::uint64_t>(r));
        if (d.ensemble.clamped)
            p.warnings.push_back(run.label + " realization " + std::to_string(r) + ": " + d.ensemble.warning);
    }
    return p;
}

namespace {

std::vector<std::pair<std::string, std::string>> base_metadata(const ScenarioConfig& cfg, std::string_view trace)
{
    return {{"name", cfg.name},
            {"mode", std::string(to_string(cfg.mode))},
            {"trace", std::string(trace)},
            {"version", std::string(version())},
            {"seed", std::to_string(cfg.seed)},
            {"realizations", std::to_string(cfg.realizations)},
            {"config", to_json(cfg).dump()}};
}

Trace para_trace(const ScenarioConfig& cfg, const std::vector<double>& grid)
{
    ParaConfig p{cfg.N, cfg.g, *cfg.para_h};
    p.validate(cfg.guard);
    Trace t;
    t.name = "para";
    t.metadata = base_metadata(cfg, "para");
    t.metadata.emplace_back("h", format_number(p.h));
    t.columns = {"t", "concurrence", "overlap_modulus", "h_t"};
    t.rows.resize(grid.size());
    const SpinMagnitude ring(cfg.N);
    parallel_for(grid.size(), [&](std::size_t i) {
        const double time = grid[i];
        const double ov = overlap_modulus(branch_direction_para(p, -1, time), branch_direction_para(p, +1, time), ring);
        t.rows[i] = {time, concurrence_para(p, time), ov, p.h};
    });
    return t;
}

Trace dia_trace(const ScenarioConfig& cfg, const PreparedDiaRun& prep, const std::vector<double>& grid,
                std::string name)
{
    for (const auto& d : prep.realizations) d.validate(cfg.grid.stop, cfg.guard);
    const std::size_t nr = prep.realizations.size();

    Trace t;
    t.name = std::move(name);
    t.metadata = base_metadata(cfg, "dia");
    const auto& s = prep.run.schedule;
    t.metadata.insert(t.metadata.end(), {{"label", prep.run.label},
                                         {"h0", format_number(s.h0)},
                                         {"v", format_number(s.v)},
                                         {"t_bar", format_number(prep.t_bar)},
                                         {"t0", format_number(prep.t0)},
                                         {"xi_d", std::to_string(prep.partition.xi_d)},
                                         {"n_d", std::to_string(prep.partition.n_d)},
                                         {"m0z", format_number(prep.m0z)},
                                         {"mdz", format_number(prep.mdz)},
                                         {"clamped_realizations", std::to_string(prep.warnings.size())}});
    t.columns = {"t", "concurrence", "overlap_modulus", "h_t"};
    if (nr > 1) {
        t.columns.emplace_back("concurrence_min");
        t.columns.emplace_back("concurrence_max");
    }
    t.rows.resize(grid.size());

    // Per (point, realization) slots keep the reduction order fixed.
    std::vector<double> conc(grid.size() * nr), ov(grid.size() * nr);
    parallel_for(grid.size() * nr, [&](std::size_t k) {
        const std::size_t i = k / nr;
        const auto& d = prep.realizations[k % nr];
        conc[k] = concurrence_dia(d, grid[i]);
        ov[k] = branch_overlap_dia(d, grid[i]);
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double csum = 0.0, osum = 0.0;
        double cmin = 1.0, cmax = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
            const double c = conc[i * nr + r];
            csum += c;
            osum += ov[i * nr + r];
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        std::vector<double> row = {grid[i], csum / nr, osum / nr, prep.realizations[0].field_after(grid[i])};
        if (nr > 1) {
            row.push_back(cmin);
            row.push_back(cmax);
        }
        t.rows[i] = std::move(row);
    }
    return t;
}

Trace difference_trace(const ScenarioConfig& cfg, const Trace& para, const Trace& dia)
{
    Trace t;
    t.name = "diff";
    t.metadata = base_metadata(cfg, "diff");
    t.columns = {"t", "concurrence_dia", "concurrence_para", "difference"};
    for (std::size_t i = 0; i < para.rows.size(); ++i) {
        const double cd = dia.rows[i][1];
        const double cp = para.rows[i][1];
        t.rows.push_back({para.rows[i][0], cd, cp, cd - cp});
    }
    return t;
}

Trace sweep_trace(const ScenarioConfig& cfg, const PreparedDiaRun& prep, const std::vector<double>& grid)
{
    const std::vector<double> gs = cfg.g_grid->values();
    const std::size_t nr = prep.realizations.size();

    Trace t;
    t.name = "sweep";
    t.metadata = base_metadata(cfg, "sweep-g");
    t.metadata.insert(t.metadata.end(), {{"label", prep.run.label},
                                         {"t0", format_number(prep.t0)},
                                         {"xi_d", std::to_string(prep.partition.xi_d)},
                                         {"n_d", std::to_string(prep.partition.n_d)},
                                         {"m0z", format_number(prep.m0z)},
                                         {"mdz", format_number(prep.mdz)}});
    t.columns = {"g", "t", "concurrence_dia", "concurrence_para", "difference"};
    t.rows.resize(gs.size() * grid.size());

    // Rows run t-major with g fastest, the scan order of a gnuplot image.
    parallel_for(gs.size(), [&](std::size_t gi) {
        const double g = gs[gi];
        ParaConfig p{cfg.N, g, *cfg.para_h};
        p.validate(cfg.guard);
        std::vector<DiaConfig> ds = prep.realizations;
        for (auto& d : ds) {
            d.g = g;
            d.validate(cfg.grid.stop, cfg.guard);
        }
        for (std::size_t ti = 0; ti < grid.size(); ++ti) {
            double cd = 0.0;
            for (const auto& d : ds) cd += concurrence_dia(d, grid[ti]);
            cd /= static_cast<double>(nr);
            const double cp = concurrence_para(p, grid[ti]);
            t.rows[ti * gs.size() + gi] = {g, grid[ti], cd, cp, cd - cp};
        }
    });
    return t;
}

struct CheckRow {
    std::string label;
    double deviation;
    double tolerance;
};

Trace oracle_trace(const ScenarioConfig& cfg, const std::vector<double>& grid, bool& passed)
{
    std::vector<CheckRow> checks;
    const ParaConfig p{cfg.N, cfg.g, *cfg.para_h};
    p.validate(cfg.guard);
    checks.push_back({"closed form vs Wootters oracle, constant field", closed_form_check(p, grid).max_deviation, 1e-10});

    if (!cfg.dia_runs.empty()) {
        const PreparedDiaRun prep = prepare_dia_run(cfg, cfg.dia_runs.front());
        if (prep.partition.two_s_d <= kMaxDenseOracleTwoS) {
            const DiaConfig& d = prep.realizations.front();
            d.validate(cfg.grid.stop, cfg.guard);
            checks.push_back({"closed form vs Dicke-basis oracle, frozen domains",
                              closed_form_check(d, grid).max_deviation, 1e-10});
        }
    }

    SamplerRng rng(cfg.seed);
    double scs = 0.0;
    for (int two_s : {1, 4, 10, 20}) {
        for (int i = 0; i < 25; ++i) {
            const ScsDirection rotor(std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * std::numbers::pi));
            const ScsDirection target(std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * std::numbers::pi));
            scs = std::max(scs, scs_cross_check(rotor, SpinMagnitude(two_s), target).max());
        }
    }
    checks.push_back({"coherent-state algebra vs dense exponential", scs, 1e-10});

    if (cfg.N <= 10)
        checks.push_back({"closed form vs exact ring dynamics", exact_vs_closed_form(p, grid).max_deviation, 0.02});

    Trace t;
    t.name = "checks";
    t.metadata = base_metadata(cfg, "oracle-check");
    t.columns = {"check", "max_deviation", "tolerance", "passed"};
    passed = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const bool ok = checks[i].deviation <= checks[i].tolerance;
        passed = passed && ok;
        t.metadata.emplace_back("check_" + std::to_string(i + 1), checks[i].label);
        t.rows.push_back({static_cast<double>(i + 1), checks[i].deviation, checks[i].tolerance, ok ? 1.0 : 0.0});
    }
    return t;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg)
{
    cfg.validate();
    ScenarioResult res;
    res.config = cfg;
    const std::vector<double> grid = cfg.grid.values();

    switch (cfg.mode) {
    case Mode::para: {
        Trace t = para_trace(cfg, grid);
        t.name.clear();
        res.traces.push_back(std::move(t));
        res.plot = PlotKind::lines;
        break;
    }
    case Mode::dia: {
        for (const auto& run : cfg.dia_runs) {
            const PreparedDiaRun prep = prepare_dia_run(cfg, run);
            res.warnings.insert(res.warnings.end(), prep.warnings.begin(), prep.warnings.end());
            res.traces.push_back(dia_trace(cfg, prep, grid, cfg.dia_runs.size() == 1 ? "" : "dia_" + run.label));
        }
        res.plot = PlotKind::lines;
        break;
    }
    case Mode::compare: {
        const PreparedDiaRun prep = prepare_dia_run(cfg, cfg.dia_runs.front());
        res.warnings = prep.warnings;
        Trace para = para_trace(cfg, grid);
        Trace dia = dia_trace(cfg, prep, grid, "dia");
        Trace diff = difference_trace(cfg, para, dia);
        res.traces = {std::move(para), std::move(dia), std::move(diff)};
        res.plot = PlotKind::compare;
        break;
    }
    case Mode::sweep_g: {
        const PreparedDiaRun prep = prepare_dia_run(cfg, cfg.dia_runs.front());
        res.warnings = prep.warnings;
        Trace t = sweep_trace(cfg, prep, grid);
        t.name.clear();
        res.traces.push_back(std::move(t));
        res.plot = PlotKind::heat_map;
        break;
    }
    case Mode::oracle_check: {
        Trace t = oracle_trace(cfg, grid, res.checks_passed);
        t.name.clear();
        res.traces.push_back(std::move(t));
        res.plot = PlotKind::table;
        break;
    }
    }
    for (const auto& t : res.traces)
        if (cfg.mode != Mode::sweep_g && cfg.mode != Mode::oracle_check) validate_concurrence_trace(t);
    return res;
}

std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const std::string& stem = result.config.stem;
    std::vector<std::filesystem::path> written;
    std::vector<std::string> names;
    for (const auto& t : result.traces) {
        const std::string file = t.name.empty() ? stem + ".csv" : stem + "_" + t.name + ".csv";
        emit_csv(t, dir / file);
        written.push_back(dir / file);
        names.push_back(file);
    }
    if (result.plot != PlotKind::table) {
        emit_plot_script(result.plot, names, result.config.name, dir / (stem + ".gp"));
        written.push_back(dir / (stem + ".gp"));
    }
    return written;
}

}  // namespace kzent
