/*
 * Copyright 2026 The preop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "preop/abstraction.hpp"

#include "preop/errors.hpp"
#include "preop/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace preop {

namespace {

// Relative tolerance for placing grid multiples against box bounds.
constexpr double kGridTolerance = 1e-9;

} // namespace

double inf_distance(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw input_error("vector dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// ---------------------------------------------------------------------------
// Boxes

bool Box::is_point() const
{
    return std::all_of(axes.begin(), axes.end(), [](const Interval& i) { return i.degenerate(); });
}

bool Box::empty() const
{
    return std::any_of(axes.begin(), axes.end(), [](const Interval& i) { return i.lower > i.upper; });
}

bool Box::contains(std::span<const double> x) const
{
    if (x.size() != axes.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& a = axes[i];
        if (a.degenerate() ? x[i] != a.lower : (x[i] < a.lower || x[i] >= a.upper))
            return false;
    }
    return true;
}

bool BoxUnion::is_point_set() const
{
    return std::all_of(boxes.begin(), boxes.end(), [](const Box& b) { return b.is_point(); });
}

bool BoxUnion::contains(std::span<const double> x) const
{
    return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(x); });
}

double span(const BoxUnion& a)
{
    if (a.empty())
        throw input_error("span of an empty box union");
    double s = std::numeric_limits<double>::infinity();
    for (const auto& b : a.boxes)
        for (const auto& i : b.axes)
            s = std::min(s, std::abs(i.upper - i.lower));
    return s;
}

namespace {

// a \ c for two boxes, appended to out as disjoint boxes.
void subtract_box(const Box& a, const Box& c, std::vector<Box>& out)
{
    Box rest = a;
    std::vector<Box> pieces;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto& ax = rest.axes[i];
        const auto& cx = c.axes[i];
        if (ax.degenerate()) {
            const bool inside = cx.degenerate() ? ax.lower == cx.lower : (ax.lower >= cx.lower && ax.lower < cx.upper);
            if (!inside) {
                out.push_back(a);
                return;
            }
            continue;
        }
        if (cx.degenerate())
            continue; // a point slab removes nothing of positive width
        const double lo = std::max(ax.lower, cx.lower);
        const double hi = std::min(ax.upper, cx.upper);
        if (lo >= hi) {
            out.push_back(a);
            return;
        }
        if (ax.lower < lo) {
            Box below = rest;
            below.axes[i] = {ax.lower, lo};
            pieces.push_back(below);
        }
        if (hi < ax.upper) {
            Box above = rest;
            above.axes[i] = {hi, ax.upper};
            pieces.push_back(above);
        }
        ax = {lo, hi};
    }
    // What is left in `rest` lies inside c.
    out.insert(out.end(), pieces.begin(), pieces.end());
}

} // namespace

BoxUnion difference(const BoxUnion& a, const BoxUnion& b)
{
    std::vector<Box> cur = a.boxes;
    for (const auto& c : b.boxes) {
        std::vector<Box> next;
        for (const auto& box : cur)
            subtract_box(box, c, next);
        cur = std::move(next);
    }
    return BoxUnion{std::move(cur)};
}

bool is_subset(const BoxUnion& inner, const BoxUnion& outer)
{
    return difference(inner, outer).empty();
}

// ---------------------------------------------------------------------------
// Grids

std::vector<GridPoint> grid(const BoxUnion& a, double eta)
{
    if (!(eta > 0.0))
        throw input_error("grid pitch must be positive");
    if (a.empty())
        return {};
    if (!a.is_point_set() && eta > span(a) * (1.0 + kGridTolerance))
        throw input_error("grid pitch " + format_coordinate(eta) + " exceeds span " + format_coordinate(span(a)));

    std::set<std::vector<std::int64_t>> indices;
    for (const auto& box : a.boxes) {
        std::vector<std::vector<std::int64_t>> per_axis;
        for (const auto& ax : box.axes) {
            std::vector<std::int64_t> ks;
            if (ax.degenerate()) {
                const auto k = static_cast<std::int64_t>(std::llround(ax.lower / eta));
                if (std::abs(static_cast<double>(k) * eta - ax.lower) <= kGridTolerance * eta)
                    ks.push_back(k);
            } else {
                const auto first = static_cast<std::int64_t>(std::ceil(ax.lower / eta - kGridTolerance));
                const auto last = static_cast<std::int64_t>(std::ceil(ax.upper / eta - kGridTolerance)) - 1;
                for (auto k = first; k <= last; ++k)
                    ks.push_back(k);
            }
            per_axis.push_back(std::move(ks));
        }
        // Cartesian product of the per-axis index lists.
        std::vector<std::int64_t> idx(per_axis.size());
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == per_axis.size()) {
                indices.insert(idx);
                return;
            }
            for (auto k : per_axis[i]) {
                idx[i] = k;
                rec(i + 1);
            }
        };
        if (std::none_of(per_axis.begin(), per_axis.end(), [](const auto& v) { return v.empty(); }))
            rec(0);
    }

    std::vector<GridPoint> out;
    for (const auto& idx : indices) {
        GridPoint p{idx, {}};
        for (auto k : idx)
            p.coords.push_back(static_cast<double>(k) * eta);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Vec> points_of(const BoxUnion& a)
{
    if (!a.is_point_set())
        throw input_error("set is not a finite point set");
    std::vector<Vec> out;
    for (const auto& b : a.boxes) {
        Vec p;
        for (const auto& ax : b.axes)
            p.push_back(ax.lower);
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(std::move(p));
    }
    return out;
}

BoxUnion inflate_secret(const BoxUnion& secret, double theta, const BoxUnion& state_set)
{
    if (!(theta >= 0.0))
        throw input_error("inflation radius must be non-negative");
    BoxUnion out;
    for (const auto& s : secret.boxes) {
        for (const auto& x : state_set.boxes) {
            if (s.dim() != x.dim())
                throw input_error("secret and state sets have different dimensions");
            Box b;
            bool nonempty = true;
            for (std::size_t i = 0; i < s.dim(); ++i) {
                const double lo = std::max(s.axes[i].lower - theta, x.axes[i].lower);
                const double hi = std::min(s.axes[i].upper + theta, x.axes[i].upper);
                if (lo > hi || (lo == hi && !x.axes[i].degenerate()))
                    nonempty = false;
                b.axes.push_back({lo, hi});
            }
            if (nonempty)
                out.boxes.push_back(std::move(b));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Control system description

Vec ControlSystemSpec::step(std::span<const double> x, std::span<const double> u) const
{
    Vec out;
    out.reserve(dynamics.size());
    for (const auto& f : dynamics)
        out.push_back(f.evaluate(x, u));
    return out;
}

Vec ControlSystemSpec::observe(std::span<const double> x) const
{
    Vec out;
    out.reserve(output.size());
    for (const auto& h : output)
        out.push_back(h.evaluate(x, {}));
    return out;
}

void validate_spec(const ControlSystemSpec& spec)
{
    const auto n = spec.state_dim;
    const auto m = spec.input_dim;
    if (n == 0)
        throw input_error("state_dim must be positive");
    auto check_union = [](const BoxUnion& a, std::size_t dim, const char* name, bool allow_degenerate) {
        for (const auto& b : a.boxes) {
            if (b.dim() != dim)
                throw input_error(std::string(name) + " has a box of dimension " + std::to_string(b.dim()) +
                                  ", expected " + std::to_string(dim));
            for (const auto& ax : b.axes) {
                if (!std::isfinite(ax.lower) || !std::isfinite(ax.upper))
                    throw input_error(std::string(name) + " has a non-finite bound");
                if (ax.lower > ax.upper)
                    throw input_error(std::string(name) + " has an interval with lower > upper");
                if (ax.degenerate() && !allow_degenerate)
                    throw input_error(std::string(name) + " has a degenerate interval");
            }
        }
    };
    if (spec.state_set.empty())
        throw input_error("state_set is empty");
    if (spec.input_set.empty())
        throw input_error("input_set is empty");
    check_union(spec.state_set, n, "state_set", false);
    check_union(spec.secret_set, n, "secret_set", false);
    check_union(spec.input_set, m, "input_set", true);
    if (!is_subset(spec.secret_set, spec.state_set))
        throw input_error("secret_set is not contained in state_set");

    if (spec.dynamics.size() != n)
        throw input_error("expected " + std::to_string(n) + " dynamics expressions, got " +
                          std::to_string(spec.dynamics.size()));
    for (const auto& f : spec.dynamics)
        if (f.state_dim() != n || f.input_dim() != m)
            throw input_error("dynamics expression '" + f.to_string() + "' declared with wrong dimensions");
    if (spec.output.empty())
        throw input_error("output map has no components");
    for (const auto& h : spec.output)
        if (h.state_dim() != n || h.input_dim() != 0)
            throw input_error("output expression '" + h.to_string() + "' declared with wrong dimensions");

    if (spec.alpha && !spec.alpha->is_class_kinf())
        throw input_error("alpha must be linear or power");
    if (spec.gamma && !spec.gamma->is_class_kinf())
        throw input_error("gamma must be linear or power");
    if (spec.beta && spec.beta->kind() != ComparisonFunction::Kind::kl_exp_linear)
        throw input_error("beta must be kl-exp-linear");
}

// ---------------------------------------------------------------------------
// Quantization

bool QuantizationReport::passed() const
{
    return first_failure() == nullptr;
}

const QuantizationCheck* QuantizationReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return &c;
    return nullptr;
}

const QuantizationCheck& QuantizationReport::get(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return c;
    throw input_error("no quantization check named '" + name + "'");
}

QuantizationReport check_quantization(const ControlSystemSpec& spec, const QuantizationParams& params,
                                      double epsilon)
{
    if (!spec.alpha || !spec.beta || !spec.gamma)
        throw input_error("quantization check needs alpha, beta and gamma");
    if (!(epsilon > 0.0))
        throw input_error("epsilon must be positive");

    QuantizationReport report;
    report.alpha_inv = alpha_inverse(*spec.alpha, epsilon);
    const double a = report.alpha_inv;

    const double b1 = eval_beta(*spec.beta, a, 1);
    {
        const double lhs = b1 + eval_gamma(*spec.gamma, params.mu) + params.eta;
        report.checks.push_back(
            {"iss-bound", "beta(alpha^-1(eps), 1) + gamma(mu) + eta <= alpha^-1(eps)", lhs, a, within(lhs, a)});
    }
    {
        const double lhs = b1 + params.eta;
        report.checks.push_back(
            {"secret-inflation", "beta(alpha^-1(eps), 1) + eta <= theta", lhs, params.theta, within(lhs, params.theta)});
    }
    {
        const BoxUnion rest = difference(spec.state_set, spec.secret_set);
        double bound = std::numeric_limits<double>::infinity();
        if (!spec.secret_set.empty())
            bound = std::min(bound, span(spec.secret_set));
        if (!rest.empty())
            bound = std::min(bound, span(rest));
        const bool ok = params.eta > 0.0 && params.eta <= bound * (1.0 + kGridTolerance);
        report.checks.push_back({"state-quantization", "0 < eta <= min(span(S), span(X \\ S))", params.eta, bound, ok});
    }
    {
        const double bound = span(spec.input_set);
        const bool point_set = spec.input_set.is_point_set();
        const bool ok = params.mu >= 0.0 && params.mu <= bound * (1.0 + kGridTolerance) && (params.mu > 0.0 || point_set);
        report.checks.push_back({"input-quantization",
                                 point_set ? "0 <= mu <= span(U)" : "0 < mu <= span(U) (U is not a finite point set)",
                                 params.mu, bound, ok});
    }
    return report;
}

const char* secret_mode_name(SecretMode mode)
{
    return mode == SecretMode::cell ? "cell" : "point";
}

SecretMode parse_secret_mode(const std::string& name)
{
    if (name == "cell")
        return SecretMode::cell;
    if (name == "point")
        return SecretMode::point;
    throw input_error("unknown secret mode '" + name + "' (expected cell or point)");
}

// ---------------------------------------------------------------------------
// Abstraction

std::string format_coordinate(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    if (s == "-0")
        s = "0";
    return s;
}

std::string format_point(std::span<const double> x)
{
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i)
            out += ",";
        out += format_coordinate(x[i]);
    }
    return out;
}

namespace {

// Does the cell [x, x + eta)^n meet the box union?
bool cell_meets(const BoxUnion& a, std::span<const double> x, double eta)
{
    for (const auto& b : a.boxes) {
        bool meets = true;
        for (std::size_t i = 0; i < x.size() && meets; ++i) {
            const auto& ax = b.axes[i];
            if (ax.degenerate())
                meets = ax.lower >= x[i] && ax.lower < x[i] + eta;
            else
                meets = std::max(ax.lower, x[i]) < std::min(ax.upper, x[i] + eta);
        }
        if (meets)
            return true;
    }
    return false;
}

} // namespace

Abstraction build_abstraction(const ControlSystemSpec& spec, const QuantizationParams& params, double epsilon,
                              SecretMode mode, bool unsafe)
{
    validate_spec(spec);
    auto report = check_quantization(spec, params, epsilon);
    if (!unsafe) {
        std::string failed;
        for (const auto& c : report.checks)
            if (!c.passed)
                failed += "\n  " + c.name + ": " + c.description + " (" + format_coordinate(c.lhs) + " vs " +
                          format_coordinate(c.rhs) + ")";
        if (!failed.empty())
            throw input_error("quantization check failed:" + failed);
    }
    if (!(params.eta > 0.0))
        throw input_error("eta must be positive");

    const double eta = params.eta;
    const auto points = grid(spec.state_set, eta);
    if (points.empty())
        throw input_error("state grid is empty");

    std::vector<Vec> inputs;
    if (params.mu == 0.0) {
        inputs = points_of(spec.input_set);
    } else {
        for (auto& p : grid(spec.input_set, params.mu))
            inputs.push_back(std::move(p.coords));
    }
    if (inputs.empty())
        throw input_error("input grid is empty");

    const BoxUnion inflated = inflate_secret(spec.secret_set, params.theta, spec.state_set);

    std::vector<Vec> state_coords;
    std::vector<Vec> input_coords;
    StateSet other_mode_secrets;
    std::vector<std::string> escaping_states;
    std::vector<std::string> notes;

    SystemDescription desc;
    std::map<std::vector<std::int64_t>, std::size_t> by_index;
    std::vector<bool> secret_cell(points.size()), secret_point(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        const auto id = format_point(p.coords);
        by_index.emplace(p.index, i);
        desc.states.push_back(id);
        desc.initial.push_back(id);
        const auto y = spec.observe(p.coords);
        desc.outputs[id] = OutputPoint{y};
        secret_cell[i] = cell_meets(inflated, p.coords, eta);
        secret_point[i] = inflated.contains(p.coords);
        if (mode == SecretMode::cell ? secret_cell[i] : secret_point[i])
            desc.secret.push_back(id);
        state_coords.push_back(p.coords);
    }
    for (const auto& u : inputs) {
        desc.inputs.push_back(format_point(u));
        input_coords.push_back(u);
    }

    const std::size_t n = spec.state_dim;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool escapes = false;
        for (std::size_t j = 0; j < inputs.size(); ++j) {
            const Vec y = spec.step(points[i].coords, inputs[j]);
            if (!spec.state_set.contains(y))
                escapes = true;
            // Candidate grid indices per axis: the multiples of eta within eta of y.
            std::vector<std::vector<std::int64_t>> per_axis(n);
            for (std::size_t a = 0; a < n; ++a) {
                const auto lo = static_cast<std::int64_t>(std::floor(y[a] / eta)) - 1;
                for (auto k = lo; k <= lo + 3; ++k)
                    if (within(std::abs(static_cast<double>(k) * eta - y[a]), eta))
                        per_axis[a].push_back(k);
            }
            std::vector<std::int64_t> idx(n);
            std::function<void(std::size_t)> rec = [&](std::size_t a) {
                if (a == n) {
                    auto it = by_index.find(idx);
                    if (it != by_index.end())
                        desc.transitions.push_back({desc.states[i], desc.inputs[j], desc.states[it->second]});
                    return;
                }
                for (auto k : per_axis[a]) {
                    idx[a] = k;
                    rec(a + 1);
                }
            };
            rec(0);
        }
        if (escapes)
            escaping_states.push_back(desc.states[i]);
    }

    for (std::size_t i = 0; i < points.size(); ++i)
        if (mode == SecretMode::cell ? secret_point[i] : secret_cell[i])
            other_mode_secrets.push_back(static_cast<StateIndex>(i));

    auto system = MetricSystem::compile(desc);

    const StateSet& chosen = system.secret_states();
    if (chosen != other_mode_secrets) {
        const char* other = mode == SecretMode::cell ? "point" : "cell";
        notes.push_back(std::string(secret_mode_name(mode)) + " mode marks " + format_set(system, chosen) +
                            " secret; " + other + " mode would mark " +
                            format_set(system, other_mode_secrets));
    }
    if (!escaping_states.empty())
        notes.push_back(std::to_string(escaping_states.size()) +
                            " state(s) have an image outside the state set");
    return Abstraction{std::move(system), std::move(state_coords), std::move(input_coords), std::move(report),
                       mode, std::move(other_mode_secrets), std::move(escaping_states), std::move(notes)};
}

// ---------------------------------------------------------------------------
// Simulation and sampling

Trajectory simulate(const ControlSystemSpec& spec, const Vec& x0, const std::vector<Vec>& inputs)
{
    if (!spec.state_set.contains(x0))
        throw input_error("initial state " + format_point(x0) + " is outside the state set");
    for (const auto& u : inputs)
        if (!spec.input_set.contains(u))
            throw input_error("input " + format_point(u) + " is outside the input set");
    Trajectory t;
    t.states.push_back(x0);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        t.states.push_back(spec.step(t.states.back(), inputs[k]));
        if (!spec.state_set.contains(t.states.back()))
            t.outside.push_back(k + 1);
    }
    return t;
}

Vec sample_point(const BoxUnion& a, std::mt19937_64& rng)
{
    if (a.empty())
        throw input_error("cannot sample from an empty set");
    std::uniform_int_distribution<std::size_t> pick(0, a.boxes.size() - 1);
    const auto& box = a.boxes[pick(rng)];
    Vec x;
    for (const auto& ax : box.axes) {
        if (ax.degenerate()) {
            x.push_back(ax.lower);
        } else {
            std::uniform_real_distribution<double> d(ax.lower, ax.upper);
            x.push_back(d(rng));
        }
    }
    return x;
}

std::vector<IssViolation> iss_pair_violations(const ControlSystemSpec& spec, const BetaBound& beta,
                                              const GammaBound& gamma, const Vec& x, const Vec& x_prime,
                                              const std::vector<Vec>& v, const std::vector<Vec>& v_prime)
{
    if (v.size() != v_prime.size())
        throw input_error("input sequences differ in length");
    double input_gap = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
        input_gap = std::max(input_gap, inf_distance(v[j], v_prime[j]));
    const double r = inf_distance(x, x_prime);
    const double g = gamma(input_gap);

    std::vector<IssViolation> out;
    Vec a = x;
    Vec b = x_prime;
    for (unsigned k = 0;; ++k) {
        const double lhs = inf_distance(a, b);
        const double rhs = beta(r, k) + g;
        if (!within(lhs, rhs))
            out.push_back({0, k, lhs, rhs, x, x_prime});
        if (k == v.size())
            break;
        a = spec.step(a, v[k]);
        b = spec.step(b, v_prime[k]);
    }
    return out;
}

IssReport check_delta_iss_empirical(const ControlSystemSpec& spec, const BetaBound& beta, const GammaBound& gamma,
                                    const IssSampling& sampling)
{
    std::mt19937_64 rng(sampling.seed);
    IssReport report;
    report.samples = sampling.samples;
    report.horizon = sampling.horizon;
    for (std::size_t i = 0; i < sampling.samples; ++i) {
        const Vec x = sample_point(spec.state_set, rng);
        const Vec xp = sample_point(spec.state_set, rng);
        std::vector<Vec> v, vp;
        for (unsigned k = 0; k < sampling.horizon; ++k) {
            v.push_back(sample_point(spec.input_set, rng));
            vp.push_back(sample_point(spec.input_set, rng));
        }
        for (auto& bad : iss_pair_violations(spec, beta, gamma, x, xp, v, vp)) {
            bad.sample = i;
            report.violations.push_back(std::move(bad));
        }
    }
    return report;
}

IssReport check_delta_iss_empirical(const ControlSystemSpec& spec, const IssSampling& sampling)
{
    if (!spec.beta || !spec.gamma)
        throw input_error("delta-ISS check needs beta and gamma");
    const auto beta = *spec.beta;
    const auto gamma = *spec.gamma;
    return check_delta_iss_empirical(
        spec, [beta](double r, unsigned k) { return eval_beta(beta, r, k); },
        [gamma](double r) { return eval_gamma(gamma, r); }, sampling);
}

RelationSampleReport sample_abstraction_relation(const ControlSystemSpec& spec, const Abstraction& abstraction,
                                                 double epsilon, std::size_t samples, std::uint64_t seed)
{
    if (!spec.alpha)
        throw input_error("relation sampling needs alpha");
    const double r = alpha_inverse(*spec.alpha, epsilon);
    const auto& sys = abstraction.system;
    std::mt19937_64 rng(seed);

    RelationSampleReport report;
    report.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        const Vec x = sample_point(spec.state_set, rng);
        const Vec hx = spec.observe(x);

        // Concrete one-step moves from x.
        std::vector<Vec> moves;
        for (const auto& u : abstraction.input_coords)
            moves.push_back(spec.step(x, u));
        moves.push_back(spec.step(x, sample_point(spec.input_set, rng)));

        auto violation = [&](const char* cond, StateIndex q, std::string detail) {
            report.violations.push_back({cond, x, sys.state_id(q), std::move(detail)});
        };

        for (StateIndex q = 0; q < sys.num_states(); ++q) {
            const auto& xq = abstraction.state_coords[q];
            if (!within(inf_distance(x, xq), r))
                continue;
            ++report.pairs_checked;

            const double dy = inf_distance(hx, sys.output(q).coords);
            if (!within(dy, epsilon))
                violation("2", q, "output distance " + format_coordinate(dy));

            const auto& succ = sys.post(q);
            for (const auto& y : moves) {
                const bool matched = std::any_of(succ.begin(), succ.end(), [&](StateIndex s2) {
                    return within(inf_distance(y, abstraction.state_coords[s2]), r);
                });
                if (!matched)
                    violation("3a", q, "concrete successor " + format_point(y) + " unmatched");
            }
            for (StateIndex s2 : succ) {
                const auto& target = abstraction.state_coords[s2];
                bool matched = false;
                bool matched_public = false;
                for (const auto& y : moves) {
                    if (!within(inf_distance(y, target), r))
                        continue;
                    matched = true;
                    if (!spec.secret_set.contains(y))
                        matched_public = true;
                }
                if (!matched)
                    violation("3b", q, "abstract successor " + sys.state_id(s2) + " unmatched");
                if (!sys.is_secret(s2) && !matched_public)
                    violation("3c", q, "non-secret abstract successor " + sys.state_id(s2) +
                                           " has no non-secret concrete match");
            }
        }
    }
    return report;
}

} // namespace preop
