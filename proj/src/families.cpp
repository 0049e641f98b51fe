#include "vps/families.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vps/errors.hpp"

namespace vps {

Polynomial hamilton_family(std::size_t n, HamiltonKind kind, std::size_t cap) {
    if (n < 1) throw std::invalid_argument("hamilton_family needs n >= 1");
    if (n > cap) throw CapExceeded("family cap", "--family-cap", cap, "n = " + std::to_string(n));
    const std::size_t nv = n * n;
    Polynomial out(nv);

    if (kind == HamiltonKind::cycles) {
        // Each n-cycle is the closed tour 1 -> order[0] -> ... -> 1.
        std::vector<std::size_t> rest(n - 1);
        std::iota(rest.begin(), rest.end(), 2);
        do {
            Monomial m(nv);
            std::size_t prev = 1;
            for (std::size_t v : rest) {
                m[hamilton_var(n, prev, v)] += 1;
                prev = v;
            }
            m[hamilton_var(n, prev, 1)] += 1;
            out.add_term(m, 1);
        } while (std::next_permutation(rest.begin(), rest.end()));
        return out;
    }

    // Paths: every ordering v_1..v_n with v_1 < v_n, edges (v_t, v_{t+1}).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 1);
    do {
        if (n < 2 || order.front() >= order.back()) continue;
        Monomial m(nv);
        for (std::size_t t = 0; t + 1 < n; ++t) m[hamilton_var(n, order[t], order[t + 1])] += 1;
        out.add_term(m, 1);
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

} // namespace vps
