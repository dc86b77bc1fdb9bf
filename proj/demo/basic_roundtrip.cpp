// Encode three short messages with the best systematic (3, 7) code, lose
// four packets, and decode from the three that remain.

#include <iostream>
#include <string>
#include <vector>

#include <sxor/sxor.hpp>

int main() {
    using namespace sxor;
    const Poly2 g = Poly2::from_mask(0xB); // z^3 + z + 1

    const BestCode best = best_systematic(3, 7, g);
    const GenMatrix a = build_systematic_sxor(3, 7, g, best.x);
    std::cout << to_text(a);
    std::cout << "x = (" << format_sequence(best.x) << "), l_max " << best.metrics.l_max << ", l_sum "
              << best.metrics.l_sum << ", alpha " << best.metrics.alpha << "\n";

    const std::vector<std::string> msgs{"shift", "and  ", "xor!!"};
    const std::size_t L = 8 * msgs[0].size();
    std::vector<Poly2> sources;
    for (const auto& m : msgs)
        sources.push_back(Poly2::from_bytes(std::span(reinterpret_cast<const std::uint8_t*>(m.data()), m.size()), L));

    const std::vector<Packet> packets = encode(a, sources, L);
    for (const Packet& p : packets) std::cout << "packet " << p.index << ": " << p.length << " bits\n";

    const std::vector<Packet> survivors{packets[1], packets[4], packets[6]};
    const std::vector<Poly2> decoded = map_decode(a, survivors, L);
    for (const Poly2& s : decoded) {
        const auto bytes = s.to_bytes(L);
        std::cout << std::string(bytes.begin(), bytes.end()) << "|";
    }
    std::cout << "\n";
    return decoded == sources ? 0 : 1;
}
