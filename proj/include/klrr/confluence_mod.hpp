#pragma once

#include <string>
#include <vector>

#include "klrr/pivotal.hpp"

namespace klrr {

// A local branching modulo isotopy: two rewriting steps out of one
// structurally E-reduced source.
struct ModBranching {
    std::string family;
    PlanarMonomial source;
    PivotalRules::Redex left;
    PivotalRules::Redex right;
};

struct ModJoinVerdict {
    bool joined = false;
    bool fuel_exhausted = false;
    size_t left_steps = 0, right_steps = 0;
    // psi^QNF data: the label of each branching arm and the labels along
    // its closure (designated-path distances, an upper approximation)
    int psi_left = 0, psi_right = 0;
    std::vector<int> left_labels, right_labels;
    bool decreasing = false;
};

// The branching families of the pivotal system: the KLR-versus-sl2 ones
// (fish and bigons with a dot), the isotopy overlaps (double crossings and
// triangles closed off by caps and cups), and the eight pairings between
// the bigon and curl rules. lambda_range bounds |<h_i,lambda>|.
std::vector<ModBranching> enumerate_critical_modulo(const CartanDatum& datum, int lambda_range,
                                                    Field field);

ModJoinVerdict check_join_modulo(const PivotalRules& rules, const ModBranching& b,
                                 size_t fuel = 4000);

// designated-path distance from u to its quasi-normal form
int psi_qnf(const PivotalRules& rules, const LinComb<PlanarMonomial>& u, size_t fuel = 4000);

}  // namespace klrr
