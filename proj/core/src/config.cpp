#include "dlflame/config.hpp"

#include "dlflame/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dlflame {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
    text = trim(text);
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError("bad value '" + std::string(text) + "' for key '" + std::string(key) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) throw ConfigError("non-finite value for key '" + std::string(key) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, std::string_view key) {
    std::vector<T> out;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("range for '" + std::string(key) + "' needs start:stop:step");
        const T start = parse_number<T>(parts[0], key);
        const T stop = parse_number<T>(parts[1], key);
        const T step = parse_number<T>(parts[2], key);
        if (!(step > 0) || stop < start) {
            throw ConfigError("range for '" + std::string(key) + "' needs step > 0 and stop >= start");
        }
        if constexpr (std::is_floating_point_v<T>) {
            const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
            if (count > 1'000'000) throw ConfigError("range for '" + std::string(key) + "' too long");
            for (long i = 0; i < count; ++i) out.push_back(start + static_cast<T>(i) * step);
        } else {
            for (T v = start; v <= stop; v += step) out.push_back(v);
        }
    } else {
        for (auto item : split(text, ',')) out.push_back(parse_number<T>(item, key));
    }
    if (out.empty()) throw ConfigError("empty list for key '" + std::string(key) + "'");
    return out;
}

bool parse_bool(std::string_view text, std::string_view key) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("bad boolean '" + std::string(text) + "' for key '" + std::string(key) + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_floating_point_v<T>) out += fmt(v[i]);
        else out += std::to_string(v[i]);
    }
    return out;
}

void validate(const RunConfig& c) {
    for (double t : c.theta) if (!(t > 1.0)) throw ConfigError("theta must exceed 1");
    for (double r : c.r_over_rc) if (!(r > 0.0)) throw ConfigError("r_over_rc must be positive");
    for (double u : c.u_rms) if (!(u >= 0.0)) throw ConfigError("u_rms must be non-negative");
    for (int n : c.n_modes) if (n < 1) throw ConfigError("n_modes must be >= 1");
    for (int n : c.n_t) if (n < 0) throw ConfigError("n_t must be >= 0");
    if (!(c.solver.step > 0.0) || !(c.solver.tol > 0.0)) throw ConfigError("step and tol must be positive");
    if (c.solver.max_iter < 0) throw ConfigError("max_iter must be >= 0");
    if (!(c.solver.init_amplitude >= 0.0)) throw ConfigError("init_amplitude must be >= 0");
    if (!(c.pde.dt > 0.0) || !(c.pde.t_end > c.pde.t_start) || c.pde.t_start < 0.0) {
        throw ConfigError("pde settings need dt > 0 and 0 <= pde_t_start < pde_t_end");
    }
}

}  // namespace

const char* to_string(RunMode mode) {
    switch (mode) {
        case RunMode::full: return "full";
        case RunMode::no_dl: return "no_dl";
        case RunMode::analytic: return "analytic";
        case RunMode::pde_oracle: return "pde_oracle";
    }
    return "?";
}

RunMode parse_run_mode(std::string_view name) {
    if (name == "full") return RunMode::full;
    if (name == "no_dl") return RunMode::no_dl;
    if (name == "analytic") return RunMode::analytic;
    if (name == "pde_oracle") return RunMode::pde_oracle;
    throw ConfigError("unknown mode '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text) {
    RunConfig c;
    using Setter = std::function<void(std::string_view, std::string_view)>;
    const std::map<std::string_view, Setter> setters = {
        {"theta", [&](auto v, auto k) { c.theta = parse_list<double>(v, k); }},
        {"r_over_rc", [&](auto v, auto k) { c.r_over_rc = parse_list<double>(v, k); }},
        {"u_rms", [&](auto v, auto k) { c.u_rms = parse_list<double>(v, k); }},
        {"n_modes", [&](auto v, auto k) { c.n_modes = parse_list<int>(v, k); }},
        {"n_t", [&](auto v, auto k) { c.n_t = parse_list<int>(v, k); }},
        {"seed", [&](auto v, auto k) { c.seed = parse_number<std::uint64_t>(v, k); }},
        {"mode", [&](auto v, auto) { c.mode = parse_run_mode(trim(v)); }},
        {"step", [&](auto v, auto k) { c.solver.step = parse_number<double>(v, k); }},
        {"tol", [&](auto v, auto k) { c.solver.tol = parse_number<double>(v, k); }},
        {"max_iter", [&](auto v, auto k) { c.solver.max_iter = parse_number<long>(v, k); }},
        {"init_amplitude", [&](auto v, auto k) { c.solver.init_amplitude = parse_number<double>(v, k); }},
        {"newton_polish", [&](auto v, auto k) { c.solver.newton_polish = parse_bool(v, k); }},
        {"extra_seeds", [&](auto v, auto k) { c.solver.extra_seeds = parse_number<int>(v, k); }},
        {"response_form", [&](auto v, auto) {
             try {
                 c.solver.response_form = parse_response_form(std::string(trim(v)));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(e.what());
             }
         }},
        {"pde_dt", [&](auto v, auto k) { c.pde.dt = parse_number<double>(v, k); }},
        {"pde_t_start", [&](auto v, auto k) { c.pde.t_start = parse_number<double>(v, k); }},
        {"pde_t_end", [&](auto v, auto k) { c.pde.t_end = parse_number<double>(v, k); }},
        {"pde_init_amplitude", [&](auto v, auto k) { c.pde.init_amplitude = parse_number<double>(v, k); }},
        {"lambda_c", [&](auto v, auto k) {
             c.overrides.has_lambda_c = true;
             c.overrides.lambda_c = parse_number<double>(v, k);
         }},
        {"c1", [&](auto v, auto k) {
             c.overrides.has_c1 = true;
             c.overrides.c1 = parse_number<double>(v, k);
         }},
        {"c2", [&](auto v, auto k) {
             c.overrides.has_c2 = true;
             c.overrides.c2 = parse_number<double>(v, k);
         }},
    };

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
        try {
            it->second(value, key);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
    std::ostringstream o;
    o << "mode = " << to_string(c.mode) << '\n'
      << "theta = " << join(c.theta) << '\n'
      << "r_over_rc = " << join(c.r_over_rc) << '\n'
      << "u_rms = " << join(c.u_rms) << '\n'
      << "n_modes = " << join(c.n_modes) << '\n'
      << "n_t = " << join(c.n_t) << '\n'
      << "seed = " << c.seed << '\n'
      << "step = " << fmt(c.solver.step) << '\n'
      << "tol = " << fmt(c.solver.tol) << '\n'
      << "max_iter = " << c.solver.max_iter << '\n'
      << "init_amplitude = " << fmt(c.solver.init_amplitude) << '\n'
      << "newton_polish = " << (c.solver.newton_polish ? "true" : "false") << '\n'
      << "extra_seeds = " << c.solver.extra_seeds << '\n'
      << "response_form = " << to_string(c.solver.response_form) << '\n'
      << "pde_dt = " << fmt(c.pde.dt) << '\n'
      << "pde_t_start = " << fmt(c.pde.t_start) << '\n'
      << "pde_t_end = " << fmt(c.pde.t_end) << '\n'
      << "pde_init_amplitude = " << fmt(c.pde.init_amplitude) << '\n';
    if (c.overrides.has_lambda_c) o << "lambda_c = " << fmt(c.overrides.lambda_c) << '\n';
    if (c.overrides.has_c1) o << "c1 = " << fmt(c.overrides.c1) << '\n';
    if (c.overrides.has_c2) o << "c2 = " << fmt(c.overrides.c2) << '\n';
    return o.str();
}

std::uint64_t child_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 finalizer applied to a seed/index mix
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<SweepPoint> expand(const RunConfig& c) {
    std::vector<SweepPoint> pts;
    for (double theta : c.theta)
        for (double r : c.r_over_rc)
            for (double u : c.u_rms)
                for (int n : c.n_modes)
                    for (int nt : c.n_t) {
                        SweepPoint p;
                        p.index = pts.size();
                        p.theta = theta;
                        p.r_over_rc = r;
                        p.u_rms = u;
                        p.n_modes = n;
                        p.n_t = nt;
                        p.seed = child_seed(c.seed, p.index);
                        pts.push_back(p);
                    }
    return pts;
}

}  // namespace dlflame
