#include "caenc/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace caenc {

ClosureOverflow::ClosureOverflow(std::size_t reached, std::size_t cap)
    : std::length_error("closure exceeded " + std::to_string(cap) + " elements (reached " + std::to_string(reached) +
                        ")"),
      reached_(reached) {}

std::vector<BitMatrix> basic_generators(Boundary boundary, int m, int n) {
    std::vector<BitMatrix> gens;
    gens.reserve(kBasicGeneratorRules.size());
    for (int rule : kBasicGeneratorRules) gens.push_back(fundamental_matrix(rule, boundary, m, n));
    return gens;
}

std::optional<std::size_t> ClosureSet::find(const BitMatrix& m) const {
    auto it = std::find(elements.begin(), elements.end(), m);
    if (it == elements.end()) return std::nullopt;
    return static_cast<std::size_t>(it - elements.begin());
}

ClosureSet close_generators(std::span<const BitMatrix> generators, std::size_t cap) {
    if (generators.empty()) throw std::invalid_argument("closure needs at least one generator");
    const std::size_t dim = generators.front().rows();
    for (const auto& g : generators)
        if (!g.square() || g.rows() != dim) throw std::invalid_argument("generators must be square and equally sized");

    ClosureSet c;
    std::unordered_map<BitMatrix, std::size_t, BitMatrixHash> index;
    auto intern = [&](BitMatrix m) -> std::size_t {
        auto [it, inserted] = index.try_emplace(m, c.elements.size());
        if (inserted) {
            if (c.elements.size() >= cap) throw ClosureOverflow(c.elements.size() + 1, cap);
            c.elements.push_back(std::move(m));
        }
        return it->second;
    };

    for (std::size_t g = 0; g < generators.size(); ++g) {
        c.generators.push_back(intern(generators[g]));
        c.generator_labels.push_back("g" + std::to_string(g));
    }
    std::vector<std::size_t> distinct = c.generators;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    for (std::size_t i = 0; i < c.elements.size(); ++i)
        for (std::size_t g : distinct) intern(bool_product(c.elements[i], c.elements[g]));

    const std::size_t order = c.elements.size();
    c.table.resize(order * order);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) {
            auto it = index.find(bool_product(c.elements[i], c.elements[j]));
            if (it == index.end()) throw std::logic_error("closure is not closed under the product");
            c.table[i * order + j] = static_cast<std::uint32_t>(it->second);
        }
    return c;
}

ClosureSet close_basic(Boundary boundary, int m, int n, std::size_t cap) {
    auto gens = basic_generators(boundary, m, n);
    ClosureSet c = close_generators(gens, cap);
    for (std::size_t g = 0; g < kBasicGeneratorRules.size(); ++g)
        c.generator_labels[g] = "M_" + std::to_string(kBasicGeneratorRules[g]);
    return c;
}

std::vector<std::size_t> power_orbit(const ClosureSet& c, std::size_t index) {
    std::vector<std::size_t> orbit;
    std::vector<bool> seen(c.order(), false);
    std::size_t cur = index;
    while (!seen[cur]) {
        seen[cur] = true;
        orbit.push_back(cur);
        cur = c.product(cur, index);
    }
    return orbit;
}

AxiomReport verify_axioms(const ClosureSet& c, std::uint64_t seed, std::size_t samples) {
    AxiomReport r;
    const std::size_t order = c.order();
    r.order = order;

    for (std::size_t e = 0; e < order && !r.identity; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < order && ok; ++x) ok = c.product(e, x) == x && c.product(x, e) == x;
        if (ok) r.identity = e;
    }

    for (std::size_t i = 0; i < order && r.commutative; ++i)
        for (std::size_t j = i + 1; j < order; ++j)
            if (c.product(i, j) != c.product(j, i)) {
                r.commutative = false;
                r.noncommuting_pair = {i, j};
                break;
            }

    for (std::size_t i = 0; i < order; ++i) {
        bool has = false;
        if (r.identity)
            for (std::size_t j = 0; j < order && !has; ++j)
                has = c.product(i, j) == *r.identity && c.product(j, i) == *r.identity;
        if (!has) r.non_invertible.push_back(i);
    }
    r.all_invertible = r.non_invertible.empty();

    for (std::size_t i = 0; i < order && !r.cyclic; ++i) {
        auto orbit = power_orbit(c, i);
        std::size_t covered = orbit.size();
        if (r.identity && std::find(orbit.begin(), orbit.end(), *r.identity) == orbit.end()) ++covered;
        if (covered == order) {
            r.cyclic = true;
            r.cyclic_generator = i;
        }
    }

    // Matrix products are associative by construction; recompute a sample of
    // triples from the matrices themselves rather than the table.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, order - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::size_t a = pick(rng), b = pick(rng), d = pick(rng);
        const auto& A = c.elements[a];
        const auto& B = c.elements[b];
        const auto& D = c.elements[d];
        ++r.associativity_samples;
        if (bool_product(bool_product(A, B), D) != bool_product(A, bool_product(B, D))) {
            r.associative = false;
            r.nonassociative_triple = std::array<std::size_t, 3>{a, b, d};
            break;
        }
    }
    return r;
}

std::size_t element_inverse(const ClosureSet& c, std::size_t index) {
    if (index >= c.order()) throw std::out_of_range("element index out of range");
    auto identity = [&]() -> std::optional<std::size_t> {
        for (std::size_t e = 0; e < c.order(); ++e) {
            bool ok = true;
            for (std::size_t x = 0; x < c.order() && ok; ++x) ok = c.product(e, x) == x && c.product(x, e) == x;
            if (ok) return e;
        }
        return std::nullopt;
    }();
    if (identity)
        for (std::size_t j = 0; j < c.order(); ++j)
            if (c.product(index, j) == *identity && c.product(j, index) == *identity) return j;
    throw NoInverse("element " + std::to_string(index) + " (" + describe_element(c, index) + ") has no inverse");
}

BitMatrix translation_matrix(int a, int b, int m, int n) {
    if (m < 1 || n < 1) throw std::out_of_range("grid dimensions must be positive");
    if (a < 0 || a >= m || b < 0 || b >= n)
        throw std::out_of_range("translation exponents (" + std::to_string(a) + "," + std::to_string(b) +
                                ") outside [0," + std::to_string(m) + ")x[0," + std::to_string(n) + ")");
    BitMatrix down = matrix_power(fundamental_matrix(8, Boundary::periodic, m, n), a, Product::boolean);
    BitMatrix right = matrix_power(fundamental_matrix(2, Boundary::periodic, m, n), b, Product::boolean);
    return bool_product(down, right);
}

std::string describe_element(const ClosureSet& c, std::size_t index) {
    for (std::size_t g = 0; g < c.generators.size(); ++g)
        if (c.generators[g] == index) return c.generator_labels[g];
    const BitMatrix& e = c.elements[index];
    if (e.is_zero()) return "Z";
    if (e == BitMatrix::identity(e.rows())) return "I";
    if (e.popcount() > 6) return "e" + std::to_string(index) + "[" + std::to_string(e.popcount()) + " ones]";
    std::string s = "E{";
    bool first = true;
    for (std::size_t r = 0; r < e.rows(); ++r)
        for (std::size_t col = 0; col < e.cols(); ++col)
            if (e.get(r, col)) {
                if (!first) s += ",";
                first = false;
                s += "(" + std::to_string(r + 1) + "," + std::to_string(col + 1) + ")";
            }
    return s + "}";
}

std::vector<ClaimCheck> check_claims(const ClosureSet& c, const AxiomReport& r, Boundary boundary, int m, int n) {
    std::vector<ClaimCheck> out;
    const std::size_t cells = static_cast<std::size_t>(m) * n;

    out.push_back({"identity exists", r.identity.has_value(),
                   r.identity ? "identity is " + describe_element(c, *r.identity) : "no two-sided identity"});

    if (r.commutative) {
        out.push_back({"commutative", true, "all " + std::to_string(r.order * (r.order - 1) / 2) + " pairs commute"});
    } else {
        auto [i, j] = *r.noncommuting_pair;
        std::string a = describe_element(c, i), b = describe_element(c, j);
        out.push_back({"commutative", false,
                       a + "*" + b + " = " + describe_element(c, c.product(i, j)) + " but " + b + "*" + a + " = " +
                           describe_element(c, c.product(j, i))});
    }

    if (boundary == Boundary::periodic) {
        std::string ev = r.all_invertible ? "every element has a two-sided inverse"
                                          : describe_element(c, r.non_invertible.front()) + " has no inverse";
        out.push_back({"every element invertible", r.all_invertible, ev});
    }

    if (r.cyclic) {
        out.push_back({"cyclic", true, "generated by " + describe_element(c, *r.cyclic_generator)});
    } else {
        std::size_t longest = 0;
        for (std::size_t i = 0; i < c.order(); ++i) longest = std::max(longest, power_orbit(c, i).size());
        out.push_back({"cyclic", false,
                       "no single element generates the set; longest power orbit has " + std::to_string(longest) +
                           " of " + std::to_string(r.order) + " elements"});
    }

    out.push_back({"order equals m*n", r.order == cells,
                   "order=" + std::to_string(r.order) + ", m*n=" + std::to_string(cells)});
    return out;
}

std::string format_report(const AxiomReport& r) {
    std::ostringstream os;
    os << "order=" << r.order << "\n";
    os << "identity=";
    if (r.identity)
        os << *r.identity;
    else
        os << "none";
    os << "\n";
    os << "commutative=";
    if (r.commutative)
        os << "true";
    else
        os << "false(counterexample " << r.noncommuting_pair->first << "," << r.noncommuting_pair->second << ")";
    os << "\n";
    os << "invertible=";
    if (r.all_invertible) {
        os << "true";
    } else {
        os << "false(non-invertible ";
        for (std::size_t k = 0; k < r.non_invertible.size(); ++k) os << (k ? "," : "") << r.non_invertible[k];
        os << ")";
    }
    os << "\n";
    os << "cyclic=";
    if (r.cyclic)
        os << "true(generator " << *r.cyclic_generator << ")";
    else
        os << "false";
    os << "\n";
    os << "associative=";
    if (r.associative) {
        os << "true(sampled " << r.associativity_samples << ")";
    } else {
        const auto& t = *r.nonassociative_triple;
        os << "false(counterexample " << t[0] << "," << t[1] << "," << t[2] << ")";
    }
    os << "\n";
    return os.str();
}

std::string format_table(const ClosureSet& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < c.order(); ++i) {
        for (std::size_t j = 0; j < c.order(); ++j) os << (j ? " " : "") << c.product(i, j);
        os << "\n";
    }
    return os.str();
}

std::string format_claims(const std::vector<ClaimCheck>& claims) {
    std::ostringstream os;
    for (const auto& cl : claims)
        os << "claim " << cl.claim << ": " << (cl.holds ? "holds" : "DEVIATES") << " (" << cl.evidence << ")\n";
    return os.str();
}

}  // namespace caenc
