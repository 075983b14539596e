#include "decim/lattice.hpp"

namespace decim {

SiteSet even_sublattice(BoxRegion box) {
    SiteSet out(box);
    SiteSet::all_of(box).for_each([&](Site s) {
        if (is_even_site(s)) out.insert(s);
    });
    return out;
}

SiteSet invisible_sites(BoxRegion box, bool include_origin) {
    SiteSet out(box);
    SiteSet::all_of(box).for_each([&](Site s) {
        if (!is_even_site(s)) out.insert(s);
    });
    if (include_origin) out.insert(Site{0, 0});
    return out;
}

SiteSet annulus(BoxRegion inner, BoxRegion outer) {
    if (outer.half_width <= inner.half_width)
        throw std::invalid_argument("annulus: outer half-width must exceed inner");
    SiteSet out(outer);
    SiteSet::all_of(outer).for_each([&](Site s) {
        if (!inner.contains(s)) out.insert(s);
    });
    return out;
}

}  // namespace decim
