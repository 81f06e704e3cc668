#include "rmdp/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace rmdp {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object())
        fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number())
        fail(where, "expected a number");
    return j.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : number(*it, where + "." + key);
}

std::size_t count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        fail(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
    if (!j.is_array())
        fail(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::size_t> indices(const json& j, const std::string& where) {
    if (!j.is_array())
        fail(where, "expected an array of indices");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(count(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

bool flag(const json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end())
        return false;
    if (!it->is_boolean())
        fail(where + "." + key, "expected a boolean");
    return it->get<bool>();
}

double q_value(const json& j, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return std::numeric_limits<double>::infinity();
    return number(j, where);
}

using Table = std::vector<std::vector<std::vector<double>>>;

Table table3(const json& j, std::size_t S, std::size_t M, std::size_t m, const std::string& where) {
    if (!j.is_array() || j.size() != S)
        fail(where, "table needs one entry per state");
    Table t(S);
    for (std::size_t s = 0; s < S; ++s) {
        const std::string ws = where + "[" + std::to_string(s) + "]";
        if (!j[s].is_array() || j[s].size() != M)
            fail(ws, "table needs one entry per action");
        for (std::size_t a = 0; a < M; ++a) {
            t[s].push_back(numbers(j[s][a], ws + "[" + std::to_string(a) + "]"));
            if (t[s][a].size() != m)
                fail(ws + "[" + std::to_string(a) + "]", "table needs one entry per support point");
        }
    }
    return t;
}

// Tables are looked up at the nearest grid indices of (x, a, z).
struct TableLookup {
    std::vector<double> states, actions, support;
    Table values;

    double operator()(double x, double a, double z) const {
        return values[project_to_grid(states, x)][project_to_grid(actions, a)][project_to_grid(support, z)];
    }
};

struct LqTransition {
    std::vector<double> support, u, v, w;

    double operator()(double x, double a, double z) const {
        const std::size_t i = project_to_grid(support, z);
        return u[i] * x + v[i] * a + w[i];
    }
};

struct StageInput {
    std::vector<double> states;
    std::vector<double> actions;
    std::vector<double> support;
    std::string where;
};

std::string builtin_name(const json& j, const std::string& where) {
    const auto& b = field(j, "builtin", where);
    if (!b.is_string())
        fail(where + ".builtin", "expected a string");
    return b.get<std::string>();
}

std::shared_ptr<LqTransition> lq_transition(const json& j, const StageInput& in) {
    auto t = std::make_shared<LqTransition>();
    t->support = in.support;
    t->u = numbers(field(j, "u", in.where), in.where + ".u");
    t->v = numbers(field(j, "v", in.where), in.where + ".v");
    t->w = numbers(field(j, "w", in.where), in.where + ".w");
    const std::size_t m = in.support.size();
    if (t->u.size() != m || t->v.size() != m || t->w.size() != m)
        fail(in.where, "lq coefficients need one entry per support point");
    return t;
}

void parse_dynamics(const json& js, const StageInput& in, StageDynamics& dyn) {
    const std::size_t S = in.states.size(), M = in.actions.size(), m = in.support.size();
    std::shared_ptr<LqTransition> lq;

    const auto& tj = field(js, "transition", in.where);
    const std::string tw = in.where + ".transition";
    if (tj.is_array()) {
        dyn.transition = TableLookup{in.states, in.actions, in.support, table3(tj, S, M, m, tw)};
    } else {
        const std::string name = builtin_name(tj, tw);
        if (name == "lq") {
            lq = lq_transition(tj, {in.states, in.actions, in.support, tw});
            dyn.transition = [lq](double x, double a, double z) { return (*lq)(x, a, z); };
        } else if (name == "energy") {
            const double K = number(field(tj, "capacity", tw), tw + ".capacity");
            dyn.transition = [K](double x, double a, double z) {
                const double y = x + z - a;
                return z >= a ? std::min(y, K) : std::max(y, 0.0);
            };
        } else if (name == "counterexample") {
            dyn.transition = [](double, double a, double z) { return -(a - z) * (a - z); };
        } else {
            fail(tw, "unknown builtin \"" + name + "\"");
        }
    }

    const auto& cj = field(js, "cost", in.where);
    const std::string cw = in.where + ".cost";
    if (cj.is_array()) {
        TableLookup t{in.states, in.actions, in.support, table3(cj, S, M, m, cw)};
        dyn.cost = [t](double x, double a, double z, double) { return t(x, a, z); };
    } else {
        const std::string name = builtin_name(cj, cw);
        if (name == "lq") {
            const double Q = number(field(cj, "Q", cw), cw + ".Q");
            const double R = number(field(cj, "R", cw), cw + ".R");
            const double Qn = number_or(cj, "Q_next", 0.0, cw);
            if (Qn != 0.0 && !lq)
                fail(cw, "Q_next requires the lq transition builtin");
            dyn.cost = [Q, R, Qn, lq](double x, double a, double z, double) {
                double c = Q * x * x + R * a * a;
                if (Qn != 0.0) {
                    const double y = (*lq)(x, a, z);
                    c += Qn * y * y;
                }
                return c;
            };
        } else if (name == "energy") {
            const double P = number(field(cj, "price", cw), cw + ".price");
            const double pen = number(field(cj, "penalty", cw), cw + ".penalty");
            dyn.cost = [P, pen](double x, double a, double z, double) {
                const double shortfall = z < a ? std::max(a - x - z, 0.0) : 0.0;
                return -a * P + (P + pen) * shortfall;
            };
        } else if (name == "counterexample") {
            dyn.cost = [](double, double a, double z, double) { return -(a - z) * (a - z); };
        } else {
            fail(cw, "unknown builtin \"" + name + "\"");
        }
    }

    if (const auto it = js.find("monotone"); it != js.end()) {
        const std::string w = in.where + ".monotone";
        dyn.monotone.admissible_decreasing = flag(*it, "admissible_decreasing", w);
        dyn.monotone.transition_increasing = flag(*it, "transition_increasing", w);
        dyn.monotone.cost_increasing = flag(*it, "cost_increasing", w);
        dyn.monotone.terminal_increasing = flag(*it, "terminal_increasing", w);
    }
    if (const auto it = js.find("convex"); it != js.end()) {
        const std::string w = in.where + ".convex";
        dyn.convex.admissible_convex = flag(*it, "admissible_convex", w);
        dyn.convex.transition_convex = flag(*it, "transition_convex", w);
        dyn.convex.cost_convex = flag(*it, "cost_convex", w);
        dyn.convex.terminal_convex = flag(*it, "terminal_convex", w);
    }
}

Spectrum parse_spectrum(const json& j, const std::string& where) {
    if (j.contains("es")) {
        const double alpha = number(j["es"], where + ".es");
        if (!(alpha >= 0.0 && alpha < 1.0))
            fail(where + ".es", "alpha must lie in [0, 1)");
        return Spectrum::expected_shortfall(alpha);
    }
    Spectrum phi;
    phi.breakpoints = numbers(field(j, "breakpoints", where), where + ".breakpoints");
    phi.values = numbers(field(j, "values", where), where + ".values");
    return phi;
}

AmbiguitySet parse_ambiguity(const json& j, const std::string& where) {
    const auto& type = field(j, "type", where);
    if (!type.is_string())
        fail(where + ".type", "expected a string");
    AmbiguitySet set;
    if (type == "generators") {
        const auto& dj = field(j, "densities", where);
        if (!dj.is_array())
            fail(where + ".densities", "expected an array");
        std::vector<Density> gens;
        for (std::size_t g = 0; g < dj.size(); ++g)
            gens.push_back(Density{numbers(dj[g], where + ".densities[" + std::to_string(g) + "]")});
        set = AmbiguitySet::from_generators(std::move(gens));
    } else if (type == "spectral") {
        set = AmbiguitySet::from_spectrum(parse_spectrum(field(j, "spectrum", where), where + ".spectrum"));
    } else {
        fail(where + ".type", "expected \"generators\" or \"spectral\"");
    }
    if (const auto it = j.find("q"); it != j.end())
        set.q = q_value(*it, where + ".q");
    if (const auto it = j.find("norm_bound"); it != j.end())
        set.norm_bound = number(*it, where + ".norm_bound");
    return set;
}

std::size_t nature_index(const json& j, const std::string& where) {
    if (j.is_null())
        return kUnset;
    if (j.is_string() && j.get<std::string>() == "comonotone")
        return kComonotone;
    return count(j, where);
}

BoundingData parse_bounding(const json& j) {
    const std::string w = "bounding";
    BoundingData b;
    b.lower = numbers(field(j, "lower", w), w + ".lower");
    b.upper = numbers(field(j, "upper", w), w + ".upper");
    b.alpha = number(field(j, "alpha", w), w + ".alpha");
    b.norm_bound = number_or(j, "norm_bound", b.norm_bound, w);
    b.eps_lower = number_or(j, "eps_lower", b.eps_lower, w);
    b.eps_upper = number_or(j, "eps_upper", b.eps_upper, w);
    if (const auto it = j.find("q"); it != j.end())
        b.q = q_value(*it, w + ".q");
    return b;
}

Instance parse_full(const json& j) {
    Instance inst;
    FiniteRobustMDP& m = inst.model;
    m.horizon = count(field(j, "horizon", "instance"), "horizon");
    m.states = numbers(field(j, "states", "instance"), "states");
    m.terminal_cost = numbers(field(j, "terminal_cost", "instance"), "terminal_cost");
    const auto& sj = field(j, "stages", "instance");
    if (!sj.is_array())
        fail("stages", "expected an array");
    // One stage object may stand for all stages.
    if (sj.size() != m.horizon && sj.size() != 1)
        fail("stages", "expected horizon entries or a single shared stage");
    const std::size_t S = m.states.size();
    for (std::size_t n = 0; n < m.horizon; ++n) {
        const std::size_t src = sj.size() == 1 ? 0 : n;
        const json& js = sj[src];
        const std::string where = "stages[" + std::to_string(src) + "]";
        Stage st;
        st.actions = numbers(field(js, "actions", where), where + ".actions");
        if (const auto it = js.find("admissible"); it != js.end()) {
            if (!it->is_array())
                fail(where + ".admissible", "expected an array per state");
            for (std::size_t s = 0; s < it->size(); ++s)
                st.admissible.push_back(indices((*it)[s], where + ".admissible[" + std::to_string(s) + "]"));
        } else {
            std::vector<std::size_t> all(st.actions.size());
            for (std::size_t a = 0; a < all.size(); ++a)
                all[a] = a;
            st.admissible.assign(S, all);
        }
        const auto& dj = field(js, "disturbance", where);
        st.disturbance.support = numbers(field(dj, "support", where + ".disturbance"), where + ".disturbance.support");
        st.disturbance.probs = numbers(field(dj, "probs", where + ".disturbance"), where + ".disturbance.probs");
        st.ambiguity = parse_ambiguity(field(js, "ambiguity", where), where + ".ambiguity");
        parse_dynamics(js, {m.states, st.actions, st.disturbance.support, where}, st.dynamics);
        m.stages.push_back(std::move(st));
    }
    if (const auto it = j.find("generator_mask"); it != j.end()) {
        GeneratorMask mask;
        const auto& mj = *it;
        if (!mj.is_array())
            fail("generator_mask", "expected [stage][state][action] lists");
        for (std::size_t n = 0; n < mj.size(); ++n) {
            mask.emplace_back();
            if (!mj[n].is_array())
                fail("generator_mask", "expected [stage][state][action] lists");
            for (std::size_t s = 0; s < mj[n].size(); ++s) {
                mask[n].emplace_back();
                if (!mj[n][s].is_array())
                    fail("generator_mask", "expected [stage][state][action] lists");
                for (std::size_t a = 0; a < mj[n][s].size(); ++a)
                    mask[n][s].push_back(indices(mj[n][s][a], "generator_mask[" + std::to_string(n) + "][" +
                                                                  std::to_string(s) + "][" + std::to_string(a) + "]"));
            }
        }
        m.generator_mask = std::move(mask);
    }
    if (const auto it = j.find("bounding"); it != j.end())
        inst.bounding = parse_bounding(*it);
    if (const auto it = j.find("policy"); it != j.end()) {
        const auto& pj = *it;
        if (const auto c = pj.find("controller"); c != pj.end()) {
            ControllerPolicy ctrl;
            if (!c->is_array())
                fail("policy.controller", "expected [stage][state] indices");
            for (std::size_t n = 0; n < c->size(); ++n)
                ctrl.push_back(indices((*c)[n], "policy.controller[" + std::to_string(n) + "]"));
            inst.controller = std::move(ctrl);
        }
        if (const auto c = pj.find("nature"); c != pj.end()) {
            NaturePolicy nat;
            if (!c->is_array())
                fail("policy.nature", "expected [stage][state][action] entries");
            for (std::size_t n = 0; n < c->size(); ++n) {
                nat.emplace_back();
                const json& row = (*c)[n];
                if (!row.is_array())
                    fail("policy.nature", "expected [stage][state][action] entries");
                for (std::size_t s = 0; s < row.size(); ++s) {
                    nat[n].emplace_back();
                    if (!row[s].is_array())
                        fail("policy.nature", "expected [stage][state][action] entries");
                    for (std::size_t a = 0; a < row[s].size(); ++a)
                        nat[n][s].push_back(nature_index(row[s][a], "policy.nature"));
                }
            }
            inst.nature = std::move(nat);
        }
    }
    return inst;
}

WindModel parse_wind(const json& j) {
    const std::string w = "wind";
    if (const auto it = j.find("family"); it != j.end()) {
        if (!it->is_string())
            fail("wind.family", "expected a string");
        const double B = number(field(j, "max_wind", w), w + ".max_wind");
        if (*it == "binomial")
            return binomial_wind(B, count(field(j, "trials", w), w + ".trials"), numbers(field(j, "p", w), w + ".p"));
        if (*it == "beta") {
            const auto& sh = field(j, "shapes", w);
            if (!sh.is_array())
                fail("wind.shapes", "expected [[alpha, beta], ...]");
            std::vector<std::pair<double, double>> shapes;
            for (std::size_t i = 0; i < sh.size(); ++i) {
                const auto ab = numbers(sh[i], "wind.shapes[" + std::to_string(i) + "]");
                if (ab.size() != 2)
                    fail("wind.shapes[" + std::to_string(i) + "]", "expected [alpha, beta]");
                shapes.emplace_back(ab[0], ab[1]);
            }
            return beta_wind(B, count(field(j, "points", w), w + ".points"), shapes);
        }
        fail("wind.family", "expected \"binomial\" or \"beta\"");
    }
    WindModel wm;
    wm.support = numbers(field(j, "support", w), w + ".support");
    const auto& lj = field(j, "laws", w);
    if (!lj.is_array())
        fail("wind.laws", "expected an array of probability vectors");
    for (std::size_t i = 0; i < lj.size(); ++i)
        wm.laws.push_back(numbers(lj[i], "wind.laws[" + std::to_string(i) + "]"));
    if (const auto it = j.find("reference"); it != j.end()) {
        wm.reference = numbers(*it, "wind.reference");
    } else if (!wm.laws.empty()) {
        wm.reference.assign(wm.support.size(), 0.0);
        for (const auto& l : wm.laws)
            for (std::size_t i = 0; i < l.size() && i < wm.reference.size(); ++i)
                wm.reference[i] += l[i] / static_cast<double>(wm.laws.size());
    }
    return wm;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw SchemaError(e.what());
    }
}

void append_row(std::ostringstream& os, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first)
            os << ',';
        os << c;
        first = false;
    }
    os << '\n';
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Instance parse_instance(const json& j) {
    return guarded([&] {
        if (!j.is_object())
            fail("instance", "expected an object");
        if (const auto it = j.find("builtin"); it != j.end()) {
            if (*it == "counterexample") {
                const auto p = parse_counterexample(j);
                return Instance{build_counterexample(p.step, p.nature_step).model, {}, {}, {}};
            }
            if (*it == "energy") {
                try {
                    return Instance{energy_build(parse_energy(j)), {}, {}, {}};
                } catch (const std::invalid_argument& e) {
                    throw SchemaError(e.what());
                }
            }
            fail("builtin", "expected \"counterexample\" or \"energy\"");
        }
        return parse_full(j);
    });
}

LQParams parse_lq(const json& j) {
    return guarded([&] {
        LQParams p;
        const std::string w = "lq";
        p.horizon = count(field(j, "horizon", w), "horizon");
        p.Q = numbers(field(j, "Q", w), "Q");
        p.R = numbers(field(j, "R", w), "R");
        if (const auto it = j.find("points"); it != j.end())
            p.points = count(*it, "points");
        p.trust_bracket_monotonicity = flag(j, "trust_bracket_monotonicity", w);
        const auto& bj = field(j, "boxes", w);
        if (!bj.is_array())
            fail("boxes", "expected an array of stage boxes");
        // A single box may stand for all stages.
        if (bj.size() != p.horizon && bj.size() != 1)
            fail("boxes", "expected horizon entries or a single shared box");
        for (std::size_t n = 0; n < p.horizon; ++n) {
            const json& b = bj[bj.size() == 1 ? 0 : n];
            const std::string where = "boxes[" + std::to_string(n) + "]";
            const auto iv = [&](const char* key) {
                const auto v = numbers(field(b, key, where), where + "." + key);
                if (v.size() == 1)
                    return Interval{v[0], v[0]};
                if (v.size() != 2)
                    fail(where + "." + key, "expected [lo, hi] or [value]");
                return Interval{v[0], v[1]};
            };
            p.boxes.push_back({iv("mu_u"), iv("sigma_u"), iv("mu_v"), iv("sigma_v"), iv("sigma_uv"), iv("w2")});
        }
        const auto v = lq_violations(p);
        if (!v.empty())
            fail("lq", v.front());
        return p;
    });
}

EnergyParams parse_energy(const json& j) {
    return guarded([&] {
        EnergyParams p;
        const std::string w = "energy";
        p.horizon = count(field(j, "horizon", w), "horizon");
        p.capacity = number(field(j, "capacity", w), "capacity");
        p.max_wind = number(field(j, "max_wind", w), "max_wind");
        p.price = number(field(j, "price", w), "price");
        p.penalty = number(field(j, "penalty", w), "penalty");
        if (const auto it = j.find("state_points"); it != j.end())
            p.state_points = count(*it, "state_points");
        if (const auto it = j.find("action_points"); it != j.end())
            p.action_points = count(*it, "action_points");
        json wind = field(j, "wind", w);
        if (wind.is_object() && wind.contains("family") && !wind.contains("max_wind"))
            wind["max_wind"] = p.max_wind;
        try {
            p.wind = parse_wind(wind);
        } catch (const std::invalid_argument& e) {
            throw SchemaError(e.what());
        }
        return p;
    });
}

CounterexampleParams parse_counterexample(const json& j) {
    return guarded([&] {
        CounterexampleParams p;
        if (j.is_null())
            return p;
        const std::string w = "counterexample";
        p.step = number_or(j, "step", p.step, w);
        if (const auto it = j.find("nature_step"); it != j.end())
            p.nature_step = number(*it, w + ".nature_step");
        p.mix_step = number_or(j, "mix_step", p.mix_step, w);
        return p;
    });
}

std::string digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

json values_json(const ValueTable& J) {
    json out = json::array();
    for (const auto& row : J) {
        json r = json::array();
        for (double v : row)
            r.push_back(v);
        out.push_back(std::move(r));
    }
    return out;
}

json nature_entry(std::size_t index) {
    if (index == kUnset)
        return nullptr;
    if (index == kComonotone)
        return "comonotone";
    return index;
}

json to_json(const SolveResult& r) {
    json nature = json::array();
    for (const auto& stage : r.nature) {
        json st = json::array();
        for (const auto& row : stage) {
            json rr = json::array();
            for (std::size_t g : row)
                rr.push_back(nature_entry(g));
            st.push_back(std::move(rr));
        }
        nature.push_back(std::move(st));
    }
    json witness = json::array();
    for (const auto& stage : r.witness) {
        json st = json::array();
        for (const auto& d : stage)
            st.push_back(d.weights);
        witness.push_back(std::move(st));
    }
    return {{"J", values_json(r.J)}, {"controller", r.controller}, {"nature", nature}, {"witness", witness}};
}

json to_json(const NatureFirstResult& r) {
    json density = json::array();
    for (const auto& stage : r.nature_density) {
        json st = json::array();
        for (const auto& d : stage)
            st.push_back(d.weights);
        density.push_back(std::move(st));
    }
    return {{"J", values_json(r.J)},      {"family", r.family},     {"weights", r.weights},
            {"nature_density", density}, {"response", r.response}, {"responses", r.responses}};
}

json to_json(const LQTheta& t) {
    return {{"mu_u", t.mu_u},   {"sigma_u", t.sigma_u},   {"mu_v", t.mu_v},
            {"sigma_v", t.sigma_v}, {"sigma_uv", t.sigma_uv}, {"w2", t.w2}};
}

json to_json(const LQSolution& sol) {
    json theta = json::array();
    for (const auto& t : sol.theta)
        theta.push_back(to_json(t));
    return {{"K", sol.K}, {"L", sol.L}, {"const", sol.constant}, {"theta_star", theta}};
}

std::string solve_csv(const FiniteRobustMDP& model, const SolveResult& r) {
    std::ostringstream os;
    append_row(os, {"n", "state", "J", "action", "generator"});
    for (std::size_t n = 0; n < r.J.size(); ++n)
        for (std::size_t s = 0; s < r.J[n].size(); ++s) {
            std::string action, gen;
            if (n < model.horizon) {
                const std::size_t a = r.controller[n][s];
                action = format_double(model.stages[n].actions[a]);
                const std::size_t g = r.nature[n][s][a];
                gen = (g == kComonotone || g == kUnset) ? "-1" : std::to_string(g);
            }
            append_row(os, {std::to_string(n), format_double(model.states[s]), format_double(r.J[n][s]), action, gen});
        }
    return os.str();
}

std::string nature_first_csv(const FiniteRobustMDP& model, const NatureFirstResult& r) {
    std::ostringstream os;
    append_row(os, {"n", "state", "J", "action", "generator"});
    for (std::size_t n = 0; n < r.J.size(); ++n)
        for (std::size_t s = 0; s < r.J[n].size(); ++s) {
            std::string action, gen;
            if (n < model.horizon) {
                action = format_double(model.stages[n].actions[r.response[n][s]]);
                gen = "-1";
                const auto& w = r.weights[n][s];
                for (std::size_t k = 0; k < w.size(); ++k)
                    if (w[k] == 1.0 && !model.stages[n].ambiguity.is_spectral())
                        gen = std::to_string(r.family[n][s][k]);
            }
            append_row(os, {std::to_string(n), format_double(model.states[s]), format_double(r.J[n][s]), action, gen});
        }
    return os.str();
}

std::string values_csv(const FiniteRobustMDP& model, const ValueTable& J) {
    std::ostringstream os;
    append_row(os, {"n", "state", "J", "action", "generator"});
    for (std::size_t n = 0; n < J.size(); ++n)
        for (std::size_t s = 0; s < J[n].size(); ++s)
            append_row(os, {std::to_string(n), format_double(model.states[s]), format_double(J[n][s]), "", ""});
    return os.str();
}

std::string lq_csv(const LQSolution& sol) {
    std::ostringstream os;
    append_row(os, {"n", "K", "L", "const", "theta_star"});
    for (std::size_t n = 0; n < sol.K.size(); ++n) {
        std::string L, theta;
        if (n < sol.L.size()) {
            L = format_double(sol.L[n]);
            const LQTheta& t = sol.theta[n];
            theta = format_double(t.mu_u) + ";" + format_double(t.sigma_u) + ";" + format_double(t.mu_v) + ";" +
                    format_double(t.sigma_v) + ";" + format_double(t.sigma_uv) + ";" + format_double(t.w2);
        }
        append_row(os, {std::to_string(n), format_double(sol.K[n]), L, format_double(sol.constant[n]), theta});
    }
    return os.str();
}

} // namespace rmdp
