#pragma once

#include "e2ev/bigint.hpp"

namespace e2ev {

/**
 * Multiplicative group mod a safe prime p = 2q + 1. All published elements
 * live in the order-q subgroup of quadratic residues generated by g.
 */
struct GroupParams {
    Bigint p;
    Bigint q;
    Bigint g;
    size_t element_width;  // ceil(bits(p) / 8); fixed encoding width for elements and scalars

    bool operator==(const GroupParams&) const = default;
};

/** p = 23, q = 11, g = 2. Small enough to check every identity by hand. */
GroupParams test_group();

/** Largest 32-bit safe prime, g = 4. Cheap enough for exhaustive and Monte Carlo tests. */
GroupParams toy_group();

/** RFC 3526 2048-bit MODP prime, g = 4 (a generator of the quadratic residues). */
GroupParams production_group();

/**
 * Full parameter audit: p and q pass Miller-Rabin, p = 2q + 1, g generates
 * the order-q subgroup, and the declared encoding width matches p.
 * Throws std::invalid_argument naming the failed property.
 */
void validate_group(const GroupParams& grp, int mr_rounds = 30);

/**
 * Subgroup membership: x in [1, p-1] and x^q = 1 mod p. For a safe prime the
 * second condition is Euler's criterion, so it is evaluated as (x|p) = 1;
 * tests pin the equivalence against the literal power.
 */
bool in_group(const GroupParams& grp, const Bigint& x);

bool is_scalar(const GroupParams& grp, const Bigint& s);

/** Serialize one group element or scalar at the group's fixed width. */
std::string element_hex(const GroupParams& grp, const Bigint& v);
Bytes element_bytes(const GroupParams& grp, const Bigint& v);

/** Parse and range-check a scalar (in [0, q-1]); throws on malformed input. */
Bigint parse_scalar(const GroupParams& grp, const std::string& hex);

/** Parse an element and enforce subgroup membership; throws on malformed input. */
Bigint parse_element(const GroupParams& grp, const std::string& hex);

}  // namespace e2ev
