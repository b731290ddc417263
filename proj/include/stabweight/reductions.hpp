#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stabweight/bitvec.hpp"
#include "stabweight/stabilizer.hpp"

namespace stabweight {

// Decoding instance: does some e with He = s have weight <= t?
struct MLDInstance {
    int m = 0;  // rows; H must have full row rank
    int n = 0;  // columns
    std::vector<BitVector> rows;
    BitVector syndrome;  // length m
    int t = 0;
};

// Shortest-basis instance: does span(basis) admit a basis of max weight <= t?
struct SBPInstance {
    int ambient = 0;  // vector length N
    std::vector<BitVector> basis;
    int t = 0;
};

// Minimum-weight generating set instance over a stabilizer group.
struct MWSGInstance {
    StabilizerGenerators generators;
    int t = 0;
};

// Shape and rank checks; throws on violation (H must have rank m, the basis
// must be independent).
void validate(const MLDInstance& inst);
void validate(const SBPInstance& inst);

// Kernel basis of H padded with n zeros, plus [x | 1^n] for one particular
// solution x of Hx = s; threshold n + t. Returns nullopt when Hx = s has no
// solution at all, in which case the MLD instance is a NO by vacuity and no
// SBP instance is produced.
std::optional<SBPInstance> mld_to_sbp(const MLDInstance& inst);

// One Z-type generator per basis vector, u_i = 1 marking a Z factor; the
// threshold carries over unchanged and weights are preserved exactly.
MWSGInstance sbp_to_mwsg(const SBPInstance& inst);

// Brute-force deciders for small instances. decide_mld scans error vectors
// by increasing weight; the other two enumerate all elements of weight <= t
// and test whether they span, which suffices because any spanning subset
// contains a full-rank subset of the same maximum weight.
bool decide_mld(const MLDInstance& inst);
bool decide_sbp(const SBPInstance& inst);
bool decide_mwsg(const MWSGInstance& inst);

// Text formats. MLD: the matrix as 0/1 rows, then the syndrome row, then a
// threshold line "t <int>". SBP: basis rows, then the threshold line. MWSG:
// one Pauli per line, then the threshold line. '#' comments throughout.
MLDInstance parse_mld(const std::string& text);
SBPInstance parse_sbp(const std::string& text);
MWSGInstance parse_mwsg(const std::string& text);
MLDInstance read_mld(const std::string& path);
SBPInstance read_sbp(const std::string& path);
MWSGInstance read_mwsg(const std::string& path);
void write_mld(const MLDInstance& inst, std::ostream& out);
void write_sbp(const SBPInstance& inst, std::ostream& out);
void write_mwsg(const MWSGInstance& inst, std::ostream& out);

}  // namespace stabweight
