#include "e2ev/group.hpp"

#include <stdexcept>

namespace e2ev {

GroupParams test_group() {
    return GroupParams{23, 11, 2, 1};
}

GroupParams toy_group() {
    return GroupParams{4294967087ULL, 2147483543ULL, 4, 4};
}

GroupParams production_group() {
    // RFC 3526, 2048-bit MODP group. The modulus is a safe prime; 4 = 2^2 is a
    // quadratic residue and therefore generates the order-q subgroup.
    static const char* kP =
        "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74"
        "020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437"
        "4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed"
        "ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05"
        "98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb"
        "9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b"
        "e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718"
        "3995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff";
    Bigint p(std::string("0x") + kP);
    return GroupParams{p, (p - 1) / 2, 4, 256};
}

void validate_group(const GroupParams& grp, int mr_rounds) {
    if (grp.p < 5) throw std::invalid_argument("group: p too small");
    if (grp.p != 2 * grp.q + 1) throw std::invalid_argument("group: p != 2q + 1");
    if (!probably_prime(grp.p, mr_rounds)) throw std::invalid_argument("group: p not prime");
    if (!probably_prime(grp.q, mr_rounds)) throw std::invalid_argument("group: q not prime");
    if (grp.g <= 1 || grp.g >= grp.p) throw std::invalid_argument("group: g out of range");
    if (legendre(grp.g, grp.p) != 1) throw std::invalid_argument("group: g not in subgroup");
    if (grp.element_width != (bit_length(grp.p) + 7) / 8) {
        throw std::invalid_argument("group: element width does not match p");
    }
}

bool in_group(const GroupParams& grp, const Bigint& x) {
    if (x < 1 || x >= grp.p) return false;
    return legendre(x, grp.p) == 1;
}

bool is_scalar(const GroupParams& grp, const Bigint& s) {
    return s >= 0 && s < grp.q;
}

std::string element_hex(const GroupParams& grp, const Bigint& v) {
    return to_fixed_hex(v, grp.element_width);
}

Bytes element_bytes(const GroupParams& grp, const Bigint& v) {
    return to_fixed_bytes(v, grp.element_width);
}

Bigint parse_scalar(const GroupParams& grp, const std::string& hex) {
    Bigint s = from_fixed_hex(hex, grp.element_width);
    if (!is_scalar(grp, s)) throw std::invalid_argument("scalar out of range");
    return s;
}

Bigint parse_element(const GroupParams& grp, const std::string& hex) {
    Bigint x = from_fixed_hex(hex, grp.element_width);
    if (x < 1 || x >= grp.p) throw std::invalid_argument("element out of range");
    if (legendre(x, grp.p) != 1) throw std::invalid_argument("element not in subgroup");
    return x;
}

}  // namespace e2ev
