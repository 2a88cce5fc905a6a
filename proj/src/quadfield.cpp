#include "pfc/quadfield.hpp"

#include <string>

#include "pfc/errors.hpp"

namespace pfc {

i64 fundamental_discriminant(u64 D) {
    return D % 4 == 3 ? -static_cast<i64>(D) : -4 * static_cast<i64>(D);
}

u64 class_number(i64 d) {
    if (d >= 0) throw std::invalid_argument("class_number: discriminant must be negative");
    const u64 ad = static_cast<u64>(-d);
    if (ad % 4 != 0 && ad % 4 != 3) throw std::invalid_argument("class_number: d must be 0 or 1 mod 4");
    u64 h = 0;
    // |b| <= a <= c implies 3b^2 <= |d|.
    for (u64 b = ad % 2; 3 * b * b <= ad; b += 2) {
        const u64 ac = (b * b + ad) / 4;
        for (u64 a = std::max<u64>(b, 1); a * a <= ac; ++a) {
            if (ac % a != 0) continue;
            const u64 c = ac / a;
            h += (b == 0 || a == b || a == c) ? 1 : 2;
        }
    }
    return h;
}

QuadFieldData field_data(u64 D) {
    if (D == 0 || !is_squarefree(D))
        throw ConfigError("D must be a positive square-free integer, got " + std::to_string(D));
    QuadFieldData q;
    q.D = D;
    q.d = fundamental_discriminant(D);
    q.h = class_number(q.d);
    q.w = D == 1 ? 4 : (D == 3 ? 6 : 2);
    return q;
}

unsigned e_factor(unsigned k, u64 D) {
    const u64 ad = static_cast<u64>(-fundamental_discriminant(D));
    return k % ad == 0 ? 2 : 1;
}

bool is_excluded_pair(unsigned k, u64 D) {
    return (k == 3 && D == 3) || (k == 4 && D == 1) || (k == 6 && D == 3);
}

u64 field_parameter(i64 d) {
    const u64 ad = static_cast<u64>(-d);
    return ad % 4 == 0 ? ad / 4 : ad;
}

std::vector<i64> fundamental_discriminants(u64 z) {
    std::vector<i64> out;
    for (u64 n = 3; n <= z; ++n) {
        if (n % 4 == 3) {
            if (is_squarefree(n)) out.push_back(-static_cast<i64>(n));
        } else if (n % 4 == 0) {
            const u64 m = n / 4;
            if ((m % 4 == 1 || m % 4 == 2) && is_squarefree(m)) out.push_back(-static_cast<i64>(n));
        }
    }
    return out;
}

} // namespace pfc
