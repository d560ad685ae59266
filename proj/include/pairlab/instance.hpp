#pragma once

#include "pairlab/theoremlab.hpp"

namespace pairlab {

// A fully validated instance document: ring, named modules, pairings built on
// canonical generators, named submodules, module maps, and run configuration.
struct ParsedInstance {
    Ring ring;
    std::vector<std::string> module_names;  // declaration order
    std::map<std::string, Module> modules;
    std::vector<std::string> pairing_names;
    std::map<std::string, Pairing> pairings;
    std::vector<std::string> submodule_names;
    std::map<std::string, Submodule> submodules;
    std::map<std::string, std::string> submodule_of;
    struct ThetaMap {
        std::string src, dst;
        ZnMatrix mat;
    };
    std::vector<std::string> map_names;
    std::map<std::string, ThetaMap> maps;
    Caps caps;
    u64 seed = 0;
    json raw;
};

// Parse and validate; the first error names the offending field (and the line
// for syntax errors).
ParsedInstance parse_instance_file(const std::string& path);
ParsedInstance parse_instance_json(const json& doc, const std::string& origin = "<memory>");

// Canonical re-emission; parse(emit(parse(f))) = parse(f) for valid documents.
json emit_instance(const ParsedInstance& pi);

// Theorem-lab instance view of a parsed document.
Instance to_instance(const ParsedInstance& pi, InstanceKind kind);

Ring parse_ring_spec(const json& spec);
// "4" -> zmod(4); "ut2_f2" -> the triangular fixture; "zmod4table" -> table
// rendering of Z/4.
Ring named_ring(const std::string& name);

// ---- report emission -----------------------------------------------------------

// Machine-readable form: canonical key order, no floats, newline-terminated.
std::string machine_report(const json& doc);
json reports_json(const std::vector<CheckReport>& reports);
std::string human_summary(const std::vector<CheckReport>& reports);

}  // namespace pairlab
