#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "caenc/bitmatrix.hpp"
#include "caenc/rules.hpp"

namespace caenc {

inline constexpr std::size_t kClosureCap = 100000;

// Raised when a closure grows past its cap; carries the element count reached.
class ClosureOverflow : public std::length_error {
public:
    ClosureOverflow(std::size_t reached, std::size_t cap);
    std::size_t reached() const { return reached_; }

private:
    std::size_t reached_;
};

class NoInverse : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The generator set {M_1, M_2, M_4, M_8, M_16} of a grid.
std::vector<BitMatrix> basic_generators(Boundary boundary, int m, int n);
inline constexpr std::array<int, 5> kBasicGeneratorRules = {1, 2, 4, 8, 16};

// Set closed under the Boolean product, in breadth-first discovery order:
// distinct generators first, then each element multiplied on the right by each
// generator.
struct ClosureSet {
    std::vector<BitMatrix> elements;
    // Element index of each input generator (duplicates share an index).
    std::vector<std::size_t> generators;
    // Display names of the input generators, parallel to `generators`.
    std::vector<std::string> generator_labels;
    // table[i * order() + j] = index of elements[i] * elements[j].
    std::vector<std::uint32_t> table;

    std::size_t order() const { return elements.size(); }
    std::size_t product(std::size_t i, std::size_t j) const { return table[i * order() + j]; }
    std::optional<std::size_t> find(const BitMatrix& m) const;
};

ClosureSet close_generators(std::span<const BitMatrix> generators, std::size_t cap = kClosureCap);
// Closure of basic_generators, labelled M_1 .. M_16.
ClosureSet close_basic(Boundary boundary, int m, int n, std::size_t cap = kClosureCap);

struct AxiomReport {
    std::size_t order = 0;
    std::optional<std::size_t> identity;
    bool commutative = true;
    std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair;
    bool all_invertible = true;
    std::vector<std::size_t> non_invertible;
    bool cyclic = false;
    // Element whose powers (with the identity, if any) give the whole set.
    std::optional<std::size_t> cyclic_generator;
    bool associative = true;
    std::size_t associativity_samples = 0;
    std::optional<std::array<std::size_t, 3>> nonassociative_triple;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2d5eedULL;

AxiomReport verify_axioms(const ClosureSet& c, std::uint64_t seed = kDefaultSeed, std::size_t samples = 100);

// Index j with e_i * e_j = e_j * e_i = identity. Throws NoInverse.
std::size_t element_inverse(const ClosureSet& c, std::size_t index);

// Powers of e_i until they repeat, starting from e_i itself.
std::vector<std::size_t> power_orbit(const ClosureSet& c, std::size_t index);

// M_8^a * M_2^b on a periodic m x n grid: the state read a rows down and b
// columns right, cyclically.
BitMatrix translation_matrix(int a, int b, int m, int n);

// A statement the generated structure is expected to satisfy, with the
// computed verdict and the evidence behind it.
struct ClaimCheck {
    std::string claim;
    bool holds = false;
    std::string evidence;
};

// Claims made for the five-generator structure: a commutative cyclic monoid of
// order mn for null boundary, an abelian cyclic group of order mn for periodic.
std::vector<ClaimCheck> check_claims(const ClosureSet& c, const AxiomReport& report, Boundary boundary, int m, int n);

// Short human-readable label: M_<rule> for generators, I, Z, or the one-based
// positions of the ones.
std::string describe_element(const ClosureSet& c, std::size_t index);

// Labeled lines: "order=", "identity=", "commutative=", "invertible=",
// "cyclic=", "associative=".
std::string format_report(const AxiomReport& report);
std::string format_table(const ClosureSet& c);
std::string format_claims(const std::vector<ClaimCheck>& claims);

}  // namespace caenc
