#pragma once

#include <optional>

#include "wlcc/closure.hpp"
#include "wlcc/structure.hpp"

namespace wlcc {

struct ReductionStep {
    enum class Kind { SplitComponents, CutMatching, CutTwoFiber, CutC8Pair, BaseCaseSeparable, IrredundantHandoff };
    Kind kind;
    // fibers named by their minimum point in the input configuration
    std::vector<int> fibers;       // removed fibers / component content, kind-dependent
    std::vector<std::vector<int>> parts;  // SplitComponents: the component fiber lists
    int partner = -1;              // CutMatching / CutTwoFiber anchor fiber
    std::string reason;            // BaseCaseSeparable
    int component_id = -1;         // IrredundantHandoff
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
};

std::string to_string(const ReductionTrace& trace);

// The three cut-down operations.  Fiber arguments are fiber indices of `c`.
// Each validates its preconditions and returns the restriction.
CoherentConfiguration cut_matching(const CoherentConfiguration& c, int X, int Y);
CoherentConfiguration cut_two_fiber(const CoherentConfiguration& c, int X);
CoherentConfiguration cut_c8_pair(const CoherentConfiguration& c, int X, int Y);

struct ReduceResult {
    std::vector<CoherentConfiguration> irredundant;
    ReductionTrace trace;
};

// Decompose; cut matchings, then 2-point fibers, then C8 pairs, splitting
// again after every cut; components of <= 1 fiber, max fiber size <= 3, or
// two fibers with a C8 interspace are separable base cases.
ReduceResult reduce_to_irredundant(const CoherentConfiguration& c);

struct NonSeparableWitness {
    std::vector<int> component_fibers;  // min points, ascending
    int generator_fiber = -1;           // min point of X in the failing f_{X,C}
    std::vector<int> generator_hyperedge;  // min points of the fibers of C
};

struct SeparabilityResult {
    bool separable = false;
    std::optional<NonSeparableWitness> witness;
    ReductionTrace trace;
};

SeparabilityResult decide_separable(const CoherentConfiguration& c);

struct AmenabilityResult {
    bool amenable = false;
    std::optional<ColoredSquareMatrix> companion;  // same palette as the input graph
    SeparabilityResult separability;               // of the coherent closure
};

// Coherent closure + separability.  On a non-separable closure, emits a
// companion graph H with g WL2-equivalent but not isomorphic to H, obtained
// by applying the unrealizable switch generator (extended backwards through
// the recorded cuts) to g's class partition; both properties are checked
// before returning.
AmenabilityResult decide_amenable(const ColoredSquareMatrix& g);

}  // namespace wlcc
