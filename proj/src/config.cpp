#include "voltfrac/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "voltfrac/spectral.hpp"

namespace voltfrac {

namespace {

const std::set<std::string> kKnownKeys = {
    "model.alpha", "model.sigma", "model.a", "model.b",
    "kernel.kind", "kernel.gamma", "kernel.file",
    "grid.dim", "grid.L", "grid.N", "grid.M", "grid.L2", "grid.N2", "grid.M2",
    "time.T", "time.N", "time.grading",
    "solver.scheme", "solver.picard_tol", "solver.picard_max_iters",
    "solver.blowup_threshold", "solver.reaction",
    "ic.kind", "ic.value", "ic.base", "ic.amp", "ic.mode",
    "output.dir", "output.cadence",
    "verify.suite", "seed",
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

struct RawConfig {
    std::map<std::string, std::string> kv;
    std::string origin;

    bool has(const std::string& k) const { return kv.count(k) > 0; }

    double number(const std::string& k, double dflt, std::ostringstream& errs) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        try {
            std::size_t pos = 0;
            double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            errs << k << " is not a number (got '" << it->second << "'); ";
            return dflt;
        }
    }

    long long integer(const std::string& k, long long dflt, std::ostringstream& errs) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        try {
            std::size_t pos = 0;
            long long v = std::stoll(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            errs << k << " is not an integer (got '" << it->second << "'); ";
            return dflt;
        }
    }

    std::string text(const std::string& k, const std::string& dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
};

RawConfig parse_raw(std::istream& in, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError(origin + ":" + std::to_string(lineno) +
                                   ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigParseError(origin + ":" + std::to_string(lineno) +
                                   ": empty key or value");
        if (!kKnownKeys.count(key))
            throw ConfigParseError(origin + ":" + std::to_string(lineno) +
                                   ": unknown key '" + key + "'");
        if (raw.kv.count(key))
            throw ConfigParseError(origin + ":" + std::to_string(lineno) +
                                   ": duplicate key '" + key + "'");
        raw.kv[key] = val;
    }
    return raw;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    RawConfig raw = parse_raw(in, origin);
    std::ostringstream errs;

    for (const char* req : {"model.alpha", "model.sigma", "model.a", "model.b",
                            "kernel.kind", "time.T", "time.N"})
        if (!raw.has(req)) errs << "missing required key " << req << "; ";

    RunConfig cfg;
    cfg.model.alpha = raw.number("model.alpha", 0.5, errs);
    cfg.model.sigma = raw.number("model.sigma", 0.5, errs);
    cfg.model.a = raw.number("model.a", 1.0, errs);
    cfg.model.b = raw.number("model.b", 1.0, errs);

    std::string kind = raw.text("kernel.kind", "exponential");
    double gamma = raw.number("kernel.gamma", 1.0, errs);
    try {
        if (kind == "exponential") cfg.model.kernel = KernelSpec::exponential(gamma);
        else if (kind == "gamma2") cfg.model.kernel = KernelSpec::gamma_order2(gamma);
        else if (kind == "tabulated") {
            if (!raw.has("kernel.file"))
                errs << "kernel.kind = tabulated requires kernel.file; ";
            else cfg.model.kernel = KernelSpec::tabulated_from_csv(raw.text("kernel.file", ""));
        } else errs << "kernel.kind must be exponential|gamma2|tabulated; ";
    } catch (const std::exception& e) {
        errs << e.what() << "; ";
    }

    int dim = static_cast<int>(raw.integer("grid.dim", 1, errs));
    double L = raw.number("grid.L", M_PI, errs);
    int N = static_cast<int>(raw.integer("grid.N", 64, errs));
    int M = static_cast<int>(raw.integer("grid.M", std::min<long long>(64, N / 2), errs));
    if (dim == 1) {
        cfg.grid.dim = 1;
        cfg.grid.length = {L, 1.0};
        cfg.grid.points = {N, 1};
        cfg.grid.modes = {M, 1};
    } else if (dim == 2) {
        cfg.grid.dim = 2;
        cfg.grid.length = {L, raw.number("grid.L2", L, errs)};
        cfg.grid.points = {N, static_cast<int>(raw.integer("grid.N2", N, errs))};
        cfg.grid.modes = {M, static_cast<int>(raw.integer("grid.M2", M, errs))};
    } else {
        errs << "grid.dim must be 1 or 2; ";
    }

    cfg.time_T = raw.number("time.T", 1.0, errs);
    cfg.time_N = static_cast<int>(raw.integer("time.N", 256, errs));
    std::string grading = raw.text("time.grading", "auto");
    if (grading == "auto") cfg.time_grading = -1.0;
    else {
        std::ostringstream dummy;
        cfg.time_grading = raw.number("time.grading", 1.0, dummy);
        if (!dummy.str().empty()) errs << "time.grading must be 'auto' or a number >= 1; ";
    }

    std::string scheme = raw.text("solver.scheme", "l1");
    if (scheme == "l1") cfg.scheme = Scheme::L1Spectral;
    else if (scheme == "picard") cfg.scheme = Scheme::MildPicard;
    else errs << "solver.scheme must be l1|picard; ";
    cfg.picard_tol = raw.number("solver.picard_tol", 1e-10, errs);
    cfg.picard_max_iters = static_cast<int>(raw.integer("solver.picard_max_iters", 50, errs));
    cfg.blowup_threshold = raw.number("solver.blowup_threshold", 1e6, errs);
    std::string re = raw.text("solver.reaction", "on");
    if (re == "on") cfg.reaction_enabled = true;
    else if (re == "off") cfg.reaction_enabled = false;
    else errs << "solver.reaction must be on|off; ";

    std::string ick = raw.text("ic.kind", "constant");
    if (ick == "constant") cfg.ic.kind = InitialCondition::Kind::Constant;
    else if (ick == "cosine") cfg.ic.kind = InitialCondition::Kind::Cosine;
    else if (ick == "random_smooth") cfg.ic.kind = InitialCondition::Kind::RandomSmooth;
    else errs << "ic.kind must be constant|cosine|random_smooth; ";
    cfg.ic.value = raw.number("ic.value", 0.5, errs);
    cfg.ic.base = raw.number("ic.base", 0.5, errs);
    cfg.ic.amp = raw.number("ic.amp", 0.2, errs);
    cfg.ic.mode = static_cast<int>(raw.integer("ic.mode", 1, errs));

    cfg.output_dir = raw.text("output.dir", "out");
    cfg.output_cadence = static_cast<int>(raw.integer("output.cadence", 1, errs));
    cfg.verify_suite = raw.text("verify.suite", "all");
    cfg.seed = static_cast<std::uint64_t>(raw.integer("seed", 12345, errs));

    // invariant validation: collect every violation
    if (!(cfg.model.alpha > 0.0 && cfg.model.alpha < 1.0))
        errs << "alpha must lie in (0,1); ";
    if (!(cfg.model.sigma > 0.0 && cfg.model.sigma < 1.0))
        errs << "sigma must lie in (0,1); ";
    if (!(cfg.model.a > 0.0)) errs << "a must be > 0; ";
    if (!(cfg.model.b > 0.0)) errs << "b must be > 0; ";
    if (!(cfg.time_T > 0.0)) errs << "time.T must be > 0; ";
    if (cfg.time_N < 2) errs << "time.N must be >= 2; ";
    if (cfg.time_grading >= 0.0 && cfg.time_grading < 1.0)
        errs << "time.grading must be >= 1; ";
    if (dim == 1 || dim == 2) {
        try { cfg.grid.validate(); } catch (const std::exception& e) { errs << e.what() << "; "; }
    }
    if (cfg.reaction_enabled)
        for (int d = 0; d < cfg.grid.dim; ++d)
            if (cfg.grid.points[d] < 2 * cfg.grid.modes[d])
                errs << "dealiasing needs grid.N >= 2*grid.M; ";
    if (!(cfg.picard_tol > 0.0)) errs << "solver.picard_tol must be > 0; ";
    if (cfg.picard_max_iters < 1) errs << "solver.picard_max_iters must be >= 1; ";
    if (!(cfg.blowup_threshold > 0.0)) errs << "solver.blowup_threshold must be > 0; ";
    if (cfg.output_cadence < 1) errs << "output.cadence must be >= 1; ";
    if (cfg.ic.kind == InitialCondition::Kind::Constant && cfg.ic.value < 0.0)
        errs << "ic.value must be >= 0; ";
    if (cfg.ic.kind == InitialCondition::Kind::Cosine &&
        cfg.ic.base < std::fabs(cfg.ic.amp))
        errs << "cosine ic needs base >= |amp| for nonnegativity; ";
    static const std::set<std::string> suites = {"specfun", "fracops", "spectral",
                                                 "model", "solver", "all"};
    if (!suites.count(cfg.verify_suite))
        errs << "verify.suite must be one of specfun|fracops|spectral|model|solver|all; ";

    if (!errs.str().empty())
        throw ConfigValidationError(origin + ": " + errs.str());
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::map<std::string, std::string> RunConfig::echo() const {
    std::map<std::string, std::string> m;
    m["model.alpha"] = fmt(model.alpha);
    m["model.sigma"] = fmt(model.sigma);
    m["model.a"] = fmt(model.a);
    m["model.b"] = fmt(model.b);
    switch (model.kernel.kind) {
        case KernelSpec::Kind::Exponential: m["kernel.kind"] = "exponential"; break;
        case KernelSpec::Kind::GammaOrder2: m["kernel.kind"] = "gamma2"; break;
        case KernelSpec::Kind::Tabulated: m["kernel.kind"] = "tabulated"; break;
    }
    m["kernel.gamma"] = fmt(model.kernel.rate);
    m["grid.dim"] = std::to_string(grid.dim);
    m["grid.L"] = fmt(grid.length[0]);
    m["grid.N"] = std::to_string(grid.points[0]);
    m["grid.M"] = std::to_string(grid.modes[0]);
    if (grid.dim == 2) {
        m["grid.L2"] = fmt(grid.length[1]);
        m["grid.N2"] = std::to_string(grid.points[1]);
        m["grid.M2"] = std::to_string(grid.modes[1]);
    }
    m["time.T"] = fmt(time_T);
    m["time.N"] = std::to_string(time_N);
    m["time.grading"] = time_grading < 0.0 ? "auto" : fmt(time_grading);
    m["solver.scheme"] = scheme == Scheme::L1Spectral ? "l1" : "picard";
    m["solver.picard_tol"] = fmt(picard_tol);
    m["solver.picard_max_iters"] = std::to_string(picard_max_iters);
    m["solver.blowup_threshold"] = fmt(blowup_threshold);
    m["solver.reaction"] = reaction_enabled ? "on" : "off";
    switch (ic.kind) {
        case InitialCondition::Kind::Constant: m["ic.kind"] = "constant"; break;
        case InitialCondition::Kind::Cosine: m["ic.kind"] = "cosine"; break;
        case InitialCondition::Kind::RandomSmooth: m["ic.kind"] = "random_smooth"; break;
    }
    m["ic.value"] = fmt(ic.value);
    m["ic.base"] = fmt(ic.base);
    m["ic.amp"] = fmt(ic.amp);
    m["ic.mode"] = std::to_string(ic.mode);
    m["output.dir"] = output_dir;
    m["output.cadence"] = std::to_string(output_cadence);
    m["verify.suite"] = verify_suite;
    m["seed"] = std::to_string(seed);
    return m;
}

TimeMesh RunConfig::make_mesh() const {
    double r = time_grading;
    if (r < 0.0)
        r = (scheme == Scheme::L1Spectral) ? default_grading(model.alpha) : 1.0;
    return TimeMesh::graded(time_T, time_N, r);
}

SolverConfig RunConfig::make_solver_config() const {
    SolverConfig s;
    s.scheme = scheme;
    s.mesh = make_mesh();
    s.picard_tol = picard_tol;
    s.picard_max_iters = picard_max_iters;
    s.blowup_threshold = blowup_threshold;
    s.diagnostics_every = output_cadence;
    s.reaction_enabled = reaction_enabled;
    return s;
}

NodalField RunConfig::make_initial_condition() const {
    NodalField u0(grid);
    const int N1 = grid.points[0], N2 = grid.points[1];
    auto xat = [&](int i) { return grid.length[0] * (i + 0.5) / N1; };
    switch (ic.kind) {
        case InitialCondition::Kind::Constant:
            std::fill(u0.values.begin(), u0.values.end(), ic.value);
            break;
        case InitialCondition::Kind::Cosine:
            for (int i1 = 0; i1 < N1; ++i1) {
                double v = ic.base + ic.amp * std::cos(ic.mode * M_PI * xat(i1) / grid.length[0]);
                for (int i2 = 0; i2 < N2; ++i2)
                    u0.values[static_cast<std::size_t>(i1) * N2 + i2] = v;
            }
            break;
        case InitialCondition::Kind::RandomSmooth: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> N01(0.0, 1.0);
            int kmax = std::min(5, grid.modes[0] - 1);
            std::vector<double> c(kmax + 1, 0.0);
            for (int k = 1; k <= kmax; ++k) c[k] = ic.amp * N01(rng) / (k * k);
            double lowest = std::numeric_limits<double>::infinity();
            for (int i1 = 0; i1 < N1; ++i1) {
                double v = ic.base;
                for (int k = 1; k <= kmax; ++k)
                    v += c[k] * std::cos(k * M_PI * xat(i1) / grid.length[0]);
                lowest = std::min(lowest, v);
                for (int i2 = 0; i2 < N2; ++i2)
                    u0.values[static_cast<std::size_t>(i1) * N2 + i2] = v;
            }
            if (lowest < 0.05 * ic.base)
                for (double& v : u0.values) v += 0.05 * ic.base - lowest;
            break;
        }
    }
    return u0;
}

}  // namespace voltfrac
