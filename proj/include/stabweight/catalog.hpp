#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "stabweight/extint.hpp"
#include "stabweight/stabilizer.hpp"

namespace stabweight {

// [[n,k,d;w]] tag of a construction: parameters plus the claimed maximum
// generator weight.
struct CodeLabel {
    int n = 0;
    int k = 0;
    int d = 0;
    int w = 0;
    auto operator<=>(const CodeLabel&) const = default;
    std::string str() const;
};

// Construction expression tree. The text grammar is
//   expr := GENS(<paulis and/or @file tokens, space separated>)
//         | REF(n,k,d,w)          another entry of the same catalog
//         | TENSOR(expr, expr)
//         | POW(expr, int)        repeated tensor power, int >= 1
//         | PAD(expr, int)        int extra qubits, each with a single-Z check
//         | SURFACE(int)          rotated surface code of the given distance
//         | EXTEND(expr, int)     adjoin one logical operator of that weight
// EXTEND is only meaningful at the top level of an entry: the searched
// logical is the first one (in qubit-support, then X<Y<Z letter order) whose
// adjunction reproduces the entry's labeled distance. The labeled weight of
// such an entry certifies the constructed generating set, namely the larger
// of the base set's maximum weight and the adjoined weight; the group can
// still admit a lighter generating set.
struct Expression {
    enum class Kind { Generators, Reference, Tensor, Power, Pad, Surface, Extend };
    Kind kind = Kind::Generators;
    std::vector<PauliOperator> generators;  // Generators
    CodeLabel ref;                          // Reference
    std::vector<Expression> children;       // Tensor: 2, Power/Pad/Extend: 1
    int arg = 0;                            // Power/Pad/Surface/Extend argument
};

// A GENS token of the form @path pulls one operator per line from that file
// ('#' comments allowed), resolved relative to base_dir; Catalog::load uses
// the catalog document's own directory.
Expression parse_expression(const std::string& text, const std::string& base_dir = ".");

struct CatalogEntry {
    CodeLabel label;
    bool optimal = true;  // false mirrors a "not known to be optimal" annotation
    Expression construction;
    std::string citation;
};

// Entry collection with label lookup. The document format is one entry per
// line, four '|'-separated fields:
//   [[n,k,d;w]] | optimal|provisional | expr | citation (may be empty)
// '#' comment lines and blank lines are skipped.
class Catalog {
public:
    static Catalog parse(const std::string& text, const std::string& base_dir = ".");
    static Catalog load(const std::string& path);

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(const CodeLabel& label) const;

    // Resolves references recursively and materializes the generator list.
    // Throws on cyclic references, unresolved references, a qubit count
    // differing from label.n, or an EXTEND search that comes up empty.
    StabilizerGenerators expand(const CatalogEntry& entry) const;

    void add(CatalogEntry entry);

private:
    StabilizerGenerators eval(const Expression& expr, const CodeLabel* target,
                              std::vector<std::tuple<int, int, int, int>>& stack) const;

    std::vector<CatalogEntry> entries_;
    std::map<std::tuple<int, int, int, int>, std::size_t> index_;
    // Expanded references are cached: the EXTEND search is deterministic but
    // not free, and padded variants re-expand their base entry. Held behind a
    // pointer so the catalog stays movable despite the mutex.
    struct Cache {
        std::mutex mutex;
        std::map<std::tuple<int, int, int, int>, StabilizerGenerators> groups;
    };
    std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

// Rotated d x d surface-code group: [[d^2,1,d]] with check weight <= 4.
StabilizerGenerators rotated_surface_code(int d);
CatalogEntry surface_code_entry(int d);

struct VerificationReport {
    CodeLabel label;
    int n = 0;
    int k = 0;
    ExtendedInt d;        // meaningful when d_checked
    bool d_checked = false;
    int w = 0;            // exact W when w_exact, else the generating set's max weight
    bool w_exact = false;
    int set_weight = 0;   // maximum weight over the expanded generating set
    bool params_match = false;  // n, k and (when checked) d agree with the label
    // Entries flagged optimal claim w is the group's exact optimal weight:
    // w == label.w when exact, w <= label.w otherwise. Provisional entries
    // only certify the exhibited construction: set_weight == label.w, with
    // the group free to admit a lighter generating set.
    bool weight_match = false;
    std::string note;           // expansion failure or budget downgrades

    bool ok() const { return params_match && weight_match; }
    std::string describe() const;
};

// Rank cap above which W is certified as an upper bound only (from the
// expanded generating set) instead of computed exactly.
inline constexpr std::size_t kVerifyRankLimit = 16;

VerificationReport verify_entry(const Catalog& catalog, const CatalogEntry& entry,
                                const DistanceBudget& budget = {});

struct UpperBoundTable {
    // (n, k, d) -> smallest verified construction weight
    std::map<std::tuple<int, int, int>, int> cells;
};

// Verifies every entry and keeps the per-parameter minimum weight. Throws
// std::runtime_error naming the first entry whose verification fails.
UpperBoundTable upper_bound_table(const Catalog& catalog, const DistanceBudget& budget = {});

}  // namespace stabweight
