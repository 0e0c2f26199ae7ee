#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "klrr/cartan.hpp"
#include "klrr/layered.hpp"

namespace klrr {

// Planar open-graph model of pivotal diagrams, quotiented by isotopy:
// crossings are rigid 4-valent vertices, arcs carry dot counts, caps and
// cups are bends of arcs (not data), and crossing-free closed components
// are bubble records placed in faces. Only the cyclic order at vertices,
// strand orientations, labels, dot counts and face placement survive; that
// is exactly the isotopy class.

// Ports are numbered counterclockwise; the build uses 0=SW, 1=SE, 2=NE,
// 3=NW, but only the cyclic order is invariant.
struct Attach {
    enum Kind : uint8_t { Bottom, Top, Port } kind;
    int idx;       // boundary position or crossing index
    int port = 0;  // for Port
    bool operator==(const Attach& o) const {
        return kind == o.kind && idx == o.idx && port == o.port;
    }
};

struct PArc {
    Attach end[2];
    Vertex label;
    bool flow01;  // strand flows end[0] -> end[1]
    int dots;
};

struct PCross {
    int arc[4];
    int arc_end[4];  // which end of arc[p] sits at port p
};

// Anchor of a floating component: a face designated through an adjacency.
struct Anchor {
    enum Kind : uint8_t { Rightmost, ArcSide, BubbleInside } kind = Rightmost;
    int arc = -1;
    bool left_of_flow = false;
    int bubble = -1;
};

struct PBubble {
    Vertex label;
    bool cw;
    int dots;
    Anchor anchor;
};

// A closed component that still contains crossings. `outer` designates the
// component face that is its outside (an ArcSide into the component),
// `host` the region of the ambient diagram it floats in.
struct CompRef {
    Anchor outer;
    Anchor host;
};

// Recipe tokens (the diagram DSL body). Positions are 1-based wire offsets.
struct PTok {
    enum Kind : uint8_t { Dot, Cross, Cap, CupR, CupL, Bubble } kind;
    int pos;
    Vertex label = -1;  // cups and bubbles
    bool cw = true;     // bubbles
    int dots = 0;       // bubbles
};

using Recipe = std::vector<PTok>;

struct SignedLabel {
    int sign;  // +1 up, -1 down
    Vertex label;
    bool operator==(const SignedLabel& o) const { return sign == o.sign && label == o.label; }
};

class PlanarMonomial {
public:
    std::vector<SignedLabel> bottom, top;
    Weight lambda;  // rightmost region
    std::vector<PArc> arcs;
    std::vector<PCross> crossings;
    std::vector<PBubble> bubbles;
    std::vector<CompRef> comps;
    int degree_cached = 0;

    const std::string& key() const;
    int degree() const { return degree_cached; }

    bool operator==(const PlanarMonomial& o) const { return key() == o.key(); }
    bool operator<(const PlanarMonomial& o) const { return key() < o.key(); }

    // Face structure from the rotation system; faces index floats and carry
    // region weights.
    struct Faces {
        // dart = (arc, walked from end e); each dart lies on exactly one face
        std::vector<std::vector<int>> face_of_dart;  // [arc][end] -> face id
        std::vector<int> bottom_gap_face;            // gap t: between Bot(t-1), Bot(t); 0..m
        std::vector<int> top_gap_face;
        int rightmost_face = -1;
        int faces = 0;
        std::vector<Weight> weight;  // per face
        std::vector<std::vector<int>> floats_in_face;
        std::vector<int> face_of_float;
    };
    const Faces& faces(const CartanDatum& datum) const;

    void invalidate() {
        key_.reset();
        faces_.reset();
    }

private:
    mutable std::optional<std::string> key_;
    mutable std::optional<Faces> faces_;
};

// Build from a recipe; validates planarity/orientations, computes the
// degree from the drawing (turning points with their local region weights)
// and places floats. Throws std::invalid_argument on malformed input.
PlanarMonomial build_planar(const std::vector<SignedLabel>& bottom, const Weight& lambda,
                            const Recipe& recipe, const CartanDatum& datum);

// Upward-only embedding of a layered monomial.
PlanarMonomial embed_layered(const LayeredMonomial& m, const Weight& lambda,
                             const CartanDatum& datum);

// canonical discovery order of crossings / arcs (boundary traversal order),
// used for deterministic redex positions
std::vector<int> canonical_crossing_order(const PlanarMonomial& m);
std::vector<int> canonical_arc_order(const PlanarMonomial& m);

// strand direction at a port: true when the strand flows into the vertex
bool port_is_in(const PlanarMonomial& m, int c, int p);

// Synthesizes some recipe that rebuilds to the same canonical class
// (used by printing); search-based, intended for desk-scale diagrams.
Recipe synthesize_recipe(const PlanarMonomial& m, const CartanDatum& datum);

}  // namespace klrr
