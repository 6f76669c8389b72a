// model.hpp -- probabilistic VASS models: ingestion, validation, normalization,
// stochastic-Petri-net translation, and the step semantics of the induced
// infinite Markov chain.
#pragma once

#include "pvass/numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pvass {

// A rule src --delta, weight--> dst.  Input documents may carry |delta_i| > 1;
// expand_updates() rewrites such rules into chains of unit steps, and every
// analysis entry point requires unit deltas.
struct Rule {
  int src = 0;
  std::vector<long long> delta;
  Int weight = 1;
  int dst = 0;
};

struct Config {
  int state = 0;
  std::vector<long long> counters;

  bool operator==(const Config&) const = default;
  auto operator<=>(const Config&) const = default;
};

// Pattern: state plus zero/positive abstraction of each counter.  Bit i of
// mask is set iff counter i is positive ('*').
struct Pattern {
  int state = 0;
  std::uint32_t mask = 0;

  bool operator==(const Pattern&) const = default;
  auto operator<=>(const Pattern&) const = default;
};

struct Pvass {
  int d = 1;
  std::vector<std::string> states;
  std::vector<Rule> rules;

  // For models produced by normalize()/expand_updates(): maps each state back
  // to the state of the model it was derived from (identity on user models).
  std::vector<int> origin;

  // Per-state outgoing rule indices (built by finalize()).
  std::vector<std::vector<int>> out;

  void finalize();  // builds `out`, fills identity origin if empty
  int n_states() const { return static_cast<int>(states.size()); }
  int state_index(const std::string& name) const;  // -1 when absent

  bool unit_updates() const;          // all deltas in {-1,0,1}
  bool satisfies_assumption1() const; // at most one rule per ordered pair
  Int total_weight(int state) const;  // sum over all rules of `state`
};

struct SpnPlace {
  std::string name;
  std::optional<long long> bound;  // nullopt = unbounded (becomes a counter)
};

struct SpnTransition {
  std::string name;
  Int weight = 1;
  std::vector<int> in;   // consumed places, multiplicity 1 each
  std::vector<int> out;  // produced places, multiplicity 1 each
};

struct Spn {
  std::vector<SpnPlace> places;
  std::vector<SpnTransition> transitions;
};

// --- ingestion -------------------------------------------------------------

// Parses and validates a model document (JSON text).  Checks weight
// positivity, consistent vector lengths and weak connectedness; throws
// ModelError with a position-annotated message otherwise.
Pvass parse_pvass(const std::string& text);
Spn parse_spn(const std::string& text);

std::string to_json(const Pvass& m);

// Throws ModelError when the model violates a structural invariant.
void validate(const Pvass& m);

// --- normal forms ----------------------------------------------------------

// Rewrites rules with |delta_i| > 1 into chains of unit rules through fresh
// forced states (decrements first, then increments).
Pvass expand_updates(const Pvass& m);

// Returns a model satisfying Assumption 1 (at most one rule per ordered state
// pair) together with the projection from new states to states of m.  The
// induced infinite chain is isomorphic to m's under the projection.  Implies
// expand_updates().
std::pair<Pvass, std::vector<int>> normalize(const Pvass& m);

// --- SPN translation -------------------------------------------------------

// Unbounded places become counters; bounded-place markings are folded into
// the control state (full product over capacities).  All arc multiplicities
// must be 1.  Weights are preserved.
Pvass spn_to_pvass(const Spn& n);

// --- step semantics --------------------------------------------------------

Pattern pattern_of(const Config& c);

// A rule is enabled at c iff every decremented counter is positive.
bool rule_enabled(const Rule& r, const Config& c);

// Exact one-step distribution of the induced chain.  If no rule is enabled
// the distribution is Dirac on c (stuck self-loop).  Probabilities are
// weight/total-enabled-weight, exact rationals summing to 1.
std::vector<std::pair<Config, Rat>> step_distribution(const Pvass& m, const Config& c);

}  // namespace pvass
