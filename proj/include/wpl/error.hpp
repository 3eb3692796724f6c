#pragma once

#include <stdexcept>
#include <string>

namespace wpl {

// Base class for all toolkit errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Usage errors: malformed input, mismatched weight triples, bad CLI values.
struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(what) {}
};

// delta(v) == 0, so L/Zv is infinite and cannot be enumerated.
struct InfiniteQuotient : Error {
    explicit InfiniteQuotient(const std::string& what) : Error(what) {}
};

// An integral solve produced a non-integral result.
struct NonIntegralSolution : Error {
    explicit NonIntegralSolution(const std::string& what) : Error(what) {}
};

// A matrix expected to have determinant +-1 does not.
struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& what) : Error(what) {}
};

// Ext^1 does not vanish between two basis classes, so the endomorphism
// algebra of their direct sum is not quasi-hereditary in the intended way.
struct ExtObstruction : Error {
    explicit ExtObstruction(const std::string& what) : Error(what) {}
};

// A relation fed to a poset constructor is not reflexive/antisymmetric/transitive.
struct NotAPartialOrder : Error {
    explicit NotAPartialOrder(const std::string& what) : Error(what) {}
};

// A ladder representation has some non-injective rung map.
struct NotInNil : Error {
    explicit NotInNil(const std::string& what) : Error(what) {}
};

// Serialized representation asks for a coefficient field other than Q.
struct FieldNotSupported : Error {
    explicit FieldNotSupported(const std::string& what) : Error(what) {}
};

// The (A - 2I) kernel of a star graph is not 1-dimensional and positive.
struct NoNullRoot : Error {
    explicit NoNullRoot(const std::string& what) : Error(what) {}
};

// No phase assignment satisfies the window constraints.
struct NoConsistentPhase : Error {
    explicit NoConsistentPhase(const std::string& what) : Error(what) {}
};

// An operation needs weight p >= 3.
struct WeightTooSmall : Error {
    explicit WeightTooSmall(const std::string& what) : Error(what) {}
};

}  // namespace wpl
