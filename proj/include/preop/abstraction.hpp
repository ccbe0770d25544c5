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

#pragma once

#include "preop/comparison.hpp"
#include "preop/expression.hpp"
#include "preop/system.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace preop {

using Vec = std::vector<double>;

/// Infinity norm of a - b. Throws input_error on dimension mismatch.
double inf_distance(std::span<const double> a, std::span<const double> b);

struct Interval
{
    double lower = 0.0;
    double upper = 0.0;

    bool degenerate() const noexcept { return lower == upper; }
};

/// Axis-aligned box. Non-degenerate axes are half-open [lower, upper); a
/// degenerate axis (lower == upper) is the single closed point {lower}.
struct Box
{
    std::vector<Interval> axes;

    std::size_t dim() const noexcept { return axes.size(); }
    bool is_point() const;
    bool contains(std::span<const double> x) const;
    bool empty() const;
};

struct BoxUnion
{
    std::vector<Box> boxes;

    std::size_t dim() const noexcept { return boxes.empty() ? 0 : boxes.front().dim(); }
    bool empty() const noexcept { return boxes.empty(); }
    /// True when every box is a single point.
    bool is_point_set() const;
    bool contains(std::span<const double> x) const;
};

/// Smallest edge length over all boxes. Throws input_error on an empty union.
double span(const BoxUnion& a);

/// Set difference a \ b as a union of disjoint boxes.
BoxUnion difference(const BoxUnion& a, const BoxUnion& b);

/// True when inner ⊆ outer.
bool is_subset(const BoxUnion& inner, const BoxUnion& outer);

struct GridPoint
{
    std::vector<std::int64_t> index; // coords[i] == index[i] * pitch
    Vec coords;
};

/// Integer multiples of eta (per axis) inside a, deduplicated and sorted by
/// index. Throws input_error if eta <= 0 or eta > span(a) for a union that is
/// not a finite point set.
std::vector<GridPoint> grid(const BoxUnion& a, double eta);

/// Every point of a finite point set, deduplicated, in declaration order.
std::vector<Vec> points_of(const BoxUnion& a);

/// {x in X : some x' in secret with ||x - x'|| <= theta}: every secret box
/// widened by theta per axis and clipped against every box of X.
BoxUnion inflate_secret(const BoxUnion& secret, double theta, const BoxUnion& state_set);

struct ControlSystemSpec
{
    std::size_t state_dim = 0;
    std::size_t input_dim = 0;
    BoxUnion state_set;
    BoxUnion secret_set;
    BoxUnion input_set;
    std::vector<Expression> dynamics; // one per state coordinate
    std::vector<Expression> output;
    std::optional<ComparisonFunction> alpha;
    std::optional<ComparisonFunction> beta;
    std::optional<ComparisonFunction> gamma;

    /// f(x, u). Propagates domain_error from the expressions.
    Vec step(std::span<const double> x, std::span<const double> u) const;
    /// h(x).
    Vec observe(std::span<const double> x) const;
};

/// Throws input_error describing the first broken structural invariant
/// (dimensions, secret set inside the state set, comparison-function roles).
void validate_spec(const ControlSystemSpec& spec);

struct QuantizationParams
{
    double eta = 0.0;   // state grid pitch
    double mu = 0.0;    // input grid pitch; 0 means "use the input points verbatim"
    double theta = 0.0; // secret-set inflation radius
};

struct QuantizationCheck
{
    std::string name;
    std::string description;
    double lhs = 0.0;
    double rhs = 0.0;
    bool passed = false;
};

struct QuantizationReport
{
    double alpha_inv = 0.0; // alpha^{-1}(epsilon)
    std::vector<QuantizationCheck> checks;

    bool passed() const;
    const QuantizationCheck* first_failure() const;
    const QuantizationCheck& get(const std::string& name) const;
};

/// Evaluates, in order:
///   iss-bound           beta(alpha^-1(eps), 1) + gamma(mu) + eta <= alpha^-1(eps)
///   secret-inflation    beta(alpha^-1(eps), 1) + eta <= theta
///   state-quantization  0 < eta <= min(span(S), span(X \ S))
///   input-quantization  0 <= mu <= span(U), mu = 0 only for a point set U
/// Throws input_error when alpha, beta or gamma is missing or of the wrong kind.
QuantizationReport check_quantization(const ControlSystemSpec& spec, const QuantizationParams& params,
                                      double epsilon);

enum class SecretMode
{
    cell,  // secret when the cell [x, x + eta)^n meets the inflated secret set
    point, // secret when the grid point itself lies in the inflated secret set
};

const char* secret_mode_name(SecretMode mode);
/// Throws input_error for anything other than "cell" or "point".
SecretMode parse_secret_mode(const std::string& name);

struct Abstraction
{
    MetricSystem system;
    std::vector<Vec> state_coords; // by state index
    std::vector<Vec> input_coords; // by input index
    QuantizationReport quantization;
    SecretMode mode = SecretMode::cell;
    /// Grid states marked secret under the other secret mode, for comparison.
    StateSet other_mode_secrets;
    /// States x with f(x, u) outside the state set for some input u.
    std::vector<std::string> escaping_states;
    std::vector<std::string> notes;
};

/// Finite abstraction on the eta-grid of the state set. Every grid point is
/// initial, x -u-> x' iff ||x' - f(x, u)|| <= eta, and H(x) = h(x).
/// Throws input_error when the quantization check fails (unless unsafe) or
/// the grid is empty.
Abstraction build_abstraction(const ControlSystemSpec& spec, const QuantizationParams& params, double epsilon,
                              SecretMode mode, bool unsafe = false);

/// Canonical decimal rendering used for grid state and input identifiers.
std::string format_coordinate(double v);
std::string format_point(std::span<const double> x);

struct Trajectory
{
    std::vector<Vec> states;
    /// Time steps k at which states[k] lies outside the state set.
    std::vector<std::size_t> outside;
};

/// xi(0) = x0, xi(k+1) = f(xi(k), inputs[k]). Throws input_error if x0 is
/// outside the state set or an input outside the input set; leaving the
/// state set later is only recorded.
Trajectory simulate(const ControlSystemSpec& spec, const Vec& x0, const std::vector<Vec>& inputs);

using BetaBound = std::function<double(double r, unsigned k)>;
using GammaBound = std::function<double(double r)>;

struct IssViolation
{
    std::size_t sample = 0;
    unsigned k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    Vec x;
    Vec x_prime;
};

struct IssReport
{
    std::size_t samples = 0;
    unsigned horizon = 0;
    std::vector<IssViolation> violations;
};

struct IssSampling
{
    std::size_t samples = 1000;
    unsigned horizon = 10;
    std::uint64_t seed = 1;
};

/// Violations of ||xi(k) - xi'(k)|| <= beta(||x - x'||, k) + gamma(||v - v'||)
/// along both trajectories for k = 0..horizon. Empty means none observed.
std::vector<IssViolation> iss_pair_violations(const ControlSystemSpec& spec, const BetaBound& beta,
                                              const GammaBound& gamma, const Vec& x, const Vec& x_prime,
                                              const std::vector<Vec>& v, const std::vector<Vec>& v_prime);

/// Random state pairs and input sequences, checked with iss_pair_violations.
IssReport check_delta_iss_empirical(const ControlSystemSpec& spec, const BetaBound& beta, const GammaBound& gamma,
                                    const IssSampling& sampling);

/// Uses the spec's own beta and gamma. Throws input_error when they are missing.
IssReport check_delta_iss_empirical(const ControlSystemSpec& spec, const IssSampling& sampling);

struct RelationSampleViolation
{
    std::string condition; // "2", "3a", "3b", "3c"
    Vec x;
    std::string abstract_state;
    std::string detail;
};

struct RelationSampleReport
{
    std::size_t samples = 0;
    std::size_t pairs_checked = 0;
    std::vector<RelationSampleViolation> violations;
};

/// Samples concrete states x and checks conditions 2, 3a, 3b and 3c of the
/// AKP relation {(x, x_q) : ||x - x_q|| <= alpha^-1(epsilon)} one step ahead
/// against the built abstraction. Concrete moves use the abstraction's input
/// points and, for 3a, uniformly sampled inputs as well.
RelationSampleReport sample_abstraction_relation(const ControlSystemSpec& spec, const Abstraction& abstraction,
                                                 double epsilon, std::size_t samples, std::uint64_t seed);

/// Uniform sample from a box union (box picked uniformly, then each axis).
Vec sample_point(const BoxUnion& a, std::mt19937_64& rng);

} // namespace preop
