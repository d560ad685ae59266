#pragma once

#include <functional>

#include "pairlab/alphacond.hpp"

namespace pairlab {

enum class InstanceKind { pairing, module, wmodule, morphism };

const char* kind_name(InstanceKind k);

// One test instance: a ring with a pairing, a module, a left module, or a
// module map theta : W' -> W, depending on the entry it feeds.
struct Instance {
    InstanceKind kind = InstanceKind::pairing;
    Ring ring;
    std::optional<Pairing> pairing;
    std::optional<Module> module_n;  // module / wmodule instances
    std::optional<Module> theta_src, theta_dst;  // morphism instances: W', W
    std::optional<ZnMatrix> theta_mat;
    std::string id;
    json descriptor;
    Caps caps;
    u64 seed = 0;
};

struct HypothesisEval {
    std::string name;
    bool value = false;
    bool vacuous = false;  // trivially satisfied at finite scale
};

struct CheckReport {
    std::string theorem;
    std::string instance_id;
    json instance_desc;
    std::vector<HypothesisEval> hypotheses;
    std::string verdict;  // "pass" | "fail" | "not-applicable"
    json witness;
    std::string certainty = "exact";
    std::string note;
    double wall_ms = 0;

    json to_json() const;  // stable, timing-free
};

struct TheoremEntry {
    std::string id;
    std::string statement;  // what the conclusion computes, in operator terms
    InstanceKind kind = InstanceKind::pairing;
    std::vector<std::string> hypotheses;
    std::string scale_note;  // e.g. "hypothesis vacuously true at desk scale"
    bool heavy = false;      // run on the thinned corpus
    // returns (holds, witness-or-null); may throw CapError for unsupported
    // backends or exhausted caps
    std::function<std::pair<bool, json>(const Instance&)> conclusion;
};

class TheoremRegistry {
  public:
    static const TheoremRegistry& global();
    const TheoremEntry* find(const std::string& id) const;
    const std::vector<TheoremEntry>& entries() const { return entries_; }

  private:
    TheoremRegistry();
    std::vector<TheoremEntry> entries_;
};

// Hypothesis names understood by the evaluator:
//   injective-cogenerator, self-injective, cogenerator, qf, semisimple,
//   hereditary, noetherian (vacuous), artinian (vacuous), cofinite (vacuous),
//   w-injective, n-injective, chi-injective, kappa-injective, dense,
//   alpha-pairing
std::vector<HypothesisEval> eval_hypotheses(const std::vector<std::string>& names,
                                            const Instance& inst);

// Deterministic single check; conclusions are only evaluated when every
// non-vacuous hypothesis holds.
CheckReport check(const std::string& theorem_id, const Instance& inst);

// ---- corpora -----------------------------------------------------------------

// All pairings over the ring: module shapes with <= 2 invariant factors and
// cardinality <= max_side, beta enumerated exhaustively while
// |V|*|W| <= caps.beta_exhaustive, otherwise caps.beta_samples seeded draws.
std::vector<Instance> pairing_corpus(const Ring& r, const Caps& caps, u64 seed,
                                     i64 max_side = 16);
// Right modules with <= max_gens invariant factors and cardinality <= max_card.
std::vector<Instance> module_corpus(const Ring& r, const Caps& caps, int max_gens, i64 max_card);
// Left modules with <= 2 invariant factors.
std::vector<Instance> wmodule_corpus(const Ring& r, const Caps& caps, i64 max_card);
// Module maps theta : W' -> W between cyclic shapes (all homomorphisms).
std::vector<Instance> morphism_corpus(const Ring& r, const Caps& caps);

std::vector<Instance> instances_for(InstanceKind kind, const Ring& r, const Caps& caps, u64 seed);

// ---- suites --------------------------------------------------------------------

struct SuiteConfig {
    std::string name;  // "qf-core" | "semisimple"
    std::vector<Ring> rings;
    Caps caps;
    u64 seed = 0;
};
// Suite names and their theorem sets.
std::vector<std::string> suite_theorems(const std::string& name);
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

// ---- counterexample miner ---------------------------------------------------------

struct MineConfig {
    std::string theorem;
    std::vector<std::string> dropped;  // nonempty
    std::vector<Ring> rings;
    Caps caps;
    u64 seed = 0;
    i64 max_instances = 2000;
};

struct Finding {
    std::string theorem;
    json instance;
    json witness;
    json hypotheses;
};

struct MineResult {
    std::vector<Finding> findings;
    i64 instances_tried = 0;
    i64 instances_matching = 0;  // violating exactly the dropped hypotheses
};

MineResult mine_counterexamples(const MineConfig& cfg);

}  // namespace pairlab
