#include "pvass/model.hpp"

#include "pvass/errors.hpp"

// vendored nlohmann single header
#include "json.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace pvass {

using nlohmann::json;

void Pvass::finalize() {
  if (origin.empty()) {
    origin.resize(states.size());
    for (size_t i = 0; i < states.size(); ++i) origin[i] = static_cast<int>(i);
  }
  out.assign(states.size(), {});
  for (size_t r = 0; r < rules.size(); ++r) out[rules[r].src].push_back(static_cast<int>(r));
}

int Pvass::state_index(const std::string& name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

bool Pvass::unit_updates() const {
  for (const Rule& r : rules)
    for (long long x : r.delta)
      if (x < -1 || x > 1) return false;
  return true;
}

bool Pvass::satisfies_assumption1() const {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(rules.size());
  for (const Rule& r : rules) pairs.emplace_back(r.src, r.dst);
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

Int Pvass::total_weight(int state) const {
  Int t = 0;
  for (int ri : out.at(state)) t += rules[ri].weight;
  return t;
}

void validate(const Pvass& m) {
  const int n = m.n_states();
  if (n == 0) throw ModelError("model has no states");
  if (m.d < 1) throw ModelError("dimension must be >= 1");
  for (size_t i = 0; i < m.rules.size(); ++i) {
    const Rule& r = m.rules[i];
    std::string at = "rule #" + std::to_string(i) + ": ";
    if (r.src < 0 || r.src >= n || r.dst < 0 || r.dst >= n)
      throw ModelError(at + "state index out of range");
    if (r.weight < 1) throw ModelError(at + "weight must be a positive integer");
    if (static_cast<int>(r.delta.size()) != m.d)
      throw ModelError(at + "delta length " + std::to_string(r.delta.size()) +
                       " does not match dimension " + std::to_string(m.d));
  }
  // Weak connectedness of (Q, ->).
  std::vector<std::vector<int>> adj(n);
  for (const Rule& r : m.rules) {
    adj[r.src].push_back(r.dst);
    adj[r.dst].push_back(r.src);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    int q = bfs.front();
    bfs.pop();
    for (int t : adj[q])
      if (!seen[t]) { seen[t] = 1; bfs.push(t); }
  }
  for (int q = 0; q < n; ++q)
    if (!seen[q])
      throw ModelError("model is not weakly connected: state '" + m.states[q] +
                       "' unreachable from '" + m.states[0] + "' in the undirected rule graph");
}

Pvass parse_pvass(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model document: ") + e.what());
  }
  Pvass m;
  try {
    if (!doc.contains("states") || !doc.contains("rules"))
      throw ModelError("model document: missing 'states' or 'rules'");
    m.states = doc.at("states").get<std::vector<std::string>>();
    int inferred = -1;
    for (size_t i = 0; i < doc.at("rules").size(); ++i) {
      const json& jr = doc.at("rules").at(i);
      Rule r;
      int src = -1, dst = -1;
      std::string s = jr.at("src").get<std::string>();
      std::string t = jr.at("dst").get<std::string>();
      src = m.state_index(s);
      dst = m.state_index(t);
      if (src < 0 || dst < 0)
        throw ModelError("rule #" + std::to_string(i) + ": unknown state '" +
                         (src < 0 ? s : t) + "'");
      r.src = src;
      r.dst = dst;
      r.delta = jr.at("delta").get<std::vector<long long>>();
      if (jr.at("weight").is_string())
        r.weight = Int(jr.at("weight").get<std::string>());
      else
        r.weight = Int(jr.at("weight").get<long long>());
      if (inferred < 0) inferred = static_cast<int>(r.delta.size());
      m.rules.push_back(std::move(r));
    }
    if (doc.contains("dimension"))
      m.d = doc.at("dimension").get<int>();
    else
      m.d = inferred < 1 ? 1 : inferred;  // dimension inferred from update vectors
  } catch (const json::exception& e) {
    throw ModelError(std::string("model document: ") + e.what());
  }
  m.finalize();
  validate(m);
  return m;
}

std::string to_json(const Pvass& m) {
  json doc;
  doc["dimension"] = m.d;
  doc["states"] = m.states;
  json rules = json::array();
  for (const Rule& r : m.rules) {
    json jr;
    jr["src"] = m.states[r.src];
    jr["dst"] = m.states[r.dst];
    jr["delta"] = r.delta;
    jr["weight"] = r.weight.str();
    rules.push_back(jr);
  }
  doc["rules"] = rules;
  return doc.dump(2);
}

Spn parse_spn(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("SPN document: ") + e.what());
  }
  Spn n;
  try {
    for (const json& jp : doc.at("places")) {
      SpnPlace p;
      p.name = jp.at("name").get<std::string>();
      if (jp.contains("bound") && !jp.at("bound").is_null())
        p.bound = jp.at("bound").get<long long>();
      n.places.push_back(std::move(p));
    }
    auto place_index = [&](const std::string& name) {
      for (size_t i = 0; i < n.places.size(); ++i)
        if (n.places[i].name == name) return static_cast<int>(i);
      throw ModelError("SPN document: unknown place '" + name + "'");
    };
    for (const json& jt : doc.at("transitions")) {
      SpnTransition t;
      t.name = jt.at("name").get<std::string>();
      if (jt.at("weight").is_string())
        t.weight = Int(jt.at("weight").get<std::string>());
      else
        t.weight = Int(jt.at("weight").get<long long>());
      if (t.weight < 1) throw ModelError("SPN transition '" + t.name + "': weight must be >= 1");
      for (const json& p : jt.value("in", json::array())) t.in.push_back(place_index(p));
      for (const json& p : jt.value("out", json::array())) t.out.push_back(place_index(p));
      // Arc multiplicities > 1 (repeated places on one side) are out of scope.
      for (auto* side : {&t.in, &t.out}) {
        auto v = *side;
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
          throw ModelError("SPN transition '" + t.name + "': arc multiplicity > 1 unsupported");
      }
      n.transitions.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw ModelError(std::string("SPN document: ") + e.what());
  }
  return n;
}

Pvass expand_updates(const Pvass& m) {
  if (m.unit_updates()) return m;
  Pvass out;
  out.d = m.d;
  out.states = m.states;
  out.origin = m.origin.empty() ? std::vector<int>{} : m.origin;
  if (out.origin.empty())
    for (size_t i = 0; i < m.states.size(); ++i) out.origin.push_back(static_cast<int>(i));

  for (size_t ri = 0; ri < m.rules.size(); ++ri) {
    const Rule& r = m.rules[ri];
    // Decompose delta into unit steps: decrements first, then increments, so
    // consumed tokens are removed before produced ones appear.
    std::vector<std::vector<long long>> steps;
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < m.d; ++i) {
        long long v = r.delta[i];
        long long unit = pass == 0 ? -1 : 1;
        for (long long k = 0; k < (pass == 0 ? -std::min(0LL, v) : std::max(0LL, v)); ++k) {
          std::vector<long long> s(m.d, 0);
          s[i] = unit;
          steps.push_back(s);
        }
      }
    }
    if (steps.empty()) steps.push_back(std::vector<long long>(m.d, 0));
    if (steps.size() == 1) {
      out.rules.push_back({r.src, steps[0], r.weight, r.dst});
      continue;
    }
    // Chain through fresh forced states; only the first step carries the
    // original weight, the rest fire with probability 1.
    int prev = r.src;
    for (size_t k = 0; k + 1 < steps.size(); ++k) {
      int fresh = static_cast<int>(out.states.size());
      out.states.push_back(m.states[r.src] + "#r" + std::to_string(ri) + "." + std::to_string(k));
      out.origin.push_back(m.origin.empty() ? r.src : m.origin[r.src]);
      out.rules.push_back({prev, steps[k], k == 0 ? r.weight : Int(1), fresh});
      prev = fresh;
    }
    out.rules.push_back({prev, steps.back(), Int(1), r.dst});
  }
  out.finalize();
  return out;
}

std::pair<Pvass, std::vector<int>> normalize(const Pvass& m0) {
  Pvass m = expand_updates(m0);
  if (m.satisfies_assumption1()) {
    std::vector<int> proj(m.states.size());
    for (size_t i = 0; i < proj.size(); ++i) proj[i] = static_cast<int>(i);
    return {m, proj};
  }
  // For each rule p->q belonging to a group of >= 2 parallel rules (same
  // ordered pair), redirect it to a fresh state q[p,kappa] that "remembers"
  // the entering rule and copies q's (resolved) outgoing rules.
  const int n = m.n_states();
  std::vector<int> group_size(m.rules.size(), 0);
  {
    std::map<std::pair<int, int>, int> count;
    for (const Rule& r : m.rules) count[{r.src, r.dst}]++;
    for (size_t i = 0; i < m.rules.size(); ++i)
      group_size[i] = count[{m.rules[i].src, m.rules[i].dst}];
  }

  Pvass out;
  out.d = m.d;
  out.states = m.states;
  std::vector<int> proj;  // new state -> state of m
  for (int i = 0; i < n; ++i) proj.push_back(i);

  // First pass: allocate fresh states and resolve every original rule's
  // target; fresh-state rule bodies are filled in a second pass.
  struct FreshState { int base; };           // fresh state behaves like `base`
  std::vector<FreshState> fresh;             // indexed by (state id - n)
  std::vector<Rule> resolved = m.rules;      // same order as m.rules
  for (size_t i = 0; i < m.rules.size(); ++i) {
    if (group_size[i] < 2) continue;
    const Rule& r = m.rules[i];
    int id = n + static_cast<int>(fresh.size());
    std::string kappa;
    for (long long x : r.delta) kappa += (x < 0 ? "-" : x > 0 ? "+" : "0");
    out.states.push_back(m.states[r.dst] + "[" + m.states[r.src] + "," + kappa + "]");
    proj.push_back(r.dst);
    fresh.push_back({r.dst});
    resolved[i].dst = id;
  }
  out.rules = resolved;
  // Second pass: each fresh state copies the resolved outgoing rules of its
  // base state.  Resolved rule sets have pairwise distinct targets, so the
  // copies satisfy Assumption 1 directly.
  std::vector<std::vector<int>> out_of(n);
  for (size_t i = 0; i < m.rules.size(); ++i) out_of[m.rules[i].src].push_back(static_cast<int>(i));
  for (size_t f = 0; f < fresh.size(); ++f) {
    int id = n + static_cast<int>(f);
    for (int ri : out_of[fresh[f].base]) {
      Rule copy = resolved[ri];
      copy.src = id;
      out.rules.push_back(copy);
    }
  }
  out.origin = proj;
  if (!m.origin.empty())
    for (size_t i = 0; i < out.origin.size(); ++i) out.origin[i] = m.origin[proj[i]];
  out.finalize();
  return {out, proj};
}

Pvass spn_to_pvass(const Spn& net) {
  // Counters = unbounded places (in order); control state = marking of the
  // bounded places (full product over capacities).
  std::vector<int> counter_of(net.places.size(), -1), slot_of(net.places.size(), -1);
  std::vector<long long> caps;
  int d = 0;
  for (size_t i = 0; i < net.places.size(); ++i) {
    if (!net.places[i].bound) {
      counter_of[i] = d++;
    } else {
      if (*net.places[i].bound < 0)
        throw ModelError("SPN place '" + net.places[i].name + "': negative capacity");
      slot_of[i] = static_cast<int>(caps.size());
      caps.push_back(*net.places[i].bound);
    }
  }
  Pvass m;
  m.d = std::max(d, 1);  // bounded nets get a single always-zero counter

  // Enumerate bounded markings mixed-radix (capacity c => values 0..c).
  long long n_states = 1;
  for (long long c : caps) {
    if (n_states > 100000 / (c + 1) + 1)
      throw ModelError("SPN bounded-place product too large");
    n_states *= c + 1;
  }
  auto decode = [&](long long code) {
    std::vector<long long> mk(caps.size());
    for (size_t j = 0; j < caps.size(); ++j) {
      mk[j] = code % (caps[j] + 1);
      code /= caps[j] + 1;
    }
    return mk;
  };
  auto encode = [&](const std::vector<long long>& mk) {
    long long code = 0;
    for (size_t j = caps.size(); j-- > 0;) code = code * (caps[j] + 1) + mk[j];
    return code;
  };
  for (long long s = 0; s < n_states; ++s) {
    auto mk = decode(s);
    std::string name = "m";
    for (long long v : mk) name += "_" + std::to_string(v);
    if (caps.empty()) name = "m";
    m.states.push_back(name);
  }
  for (const SpnTransition& t : net.transitions) {
    for (long long s = 0; s < n_states; ++s) {
      auto mk = decode(s);
      std::vector<long long> delta(m.d, 0);
      bool enabled = true;
      for (int p : t.in) {
        if (counter_of[p] >= 0) {
          delta[counter_of[p]] -= 1;  // counter enabledness handled by semantics
        } else {
          if (mk[slot_of[p]] == 0) { enabled = false; break; }
          mk[slot_of[p]] -= 1;
        }
      }
      if (!enabled) continue;
      for (int p : t.out) {
        if (counter_of[p] >= 0) {
          delta[counter_of[p]] += 1;
        } else {
          mk[slot_of[p]] += 1;
          if (mk[slot_of[p]] > caps[slot_of[p]])
            throw ModelError("SPN transition '" + t.name + "': capacity overflow on place '" +
                             net.places[p].name + "'");
        }
      }
      m.rules.push_back({static_cast<int>(s), delta, t.weight, static_cast<int>(encode(mk))});
    }
  }
  m.finalize();
  validate(m);
  return m;
}

Pattern pattern_of(const Config& c) {
  Pattern p;
  p.state = c.state;
  for (size_t i = 0; i < c.counters.size(); ++i)
    if (c.counters[i] > 0) p.mask |= (1u << i);
  return p;
}

bool rule_enabled(const Rule& r, const Config& c) {
  for (size_t i = 0; i < r.delta.size(); ++i)
    if (c.counters[i] + r.delta[i] < 0) return false;
  return true;
}

std::vector<std::pair<Config, Rat>> step_distribution(const Pvass& m, const Config& c) {
  if (c.state < 0 || c.state >= m.n_states()) throw ModelError("configuration state not in Q");
  Int total = 0;
  std::vector<int> enabled;
  for (int ri : m.out[c.state]) {
    if (rule_enabled(m.rules[ri], c)) {
      enabled.push_back(ri);
      total += m.rules[ri].weight;
    }
  }
  std::vector<std::pair<Config, Rat>> dist;
  if (enabled.empty()) {
    dist.emplace_back(c, Rat(1));  // stuck: Dirac self-loop
    return dist;
  }
  for (int ri : enabled) {
    const Rule& r = m.rules[ri];
    Config next;
    next.state = r.dst;
    next.counters = c.counters;
    for (int i = 0; i < m.d; ++i) next.counters[i] += r.delta[i];
    dist.emplace_back(std::move(next), Rat(r.weight, total));
  }
  return dist;
}

}  // namespace pvass
